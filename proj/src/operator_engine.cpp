#include "wbs/operator_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace wbs {

namespace {

struct Accumulator {
    std::map<long long, std::vector<Contribution>> buckets;
    double opscale = 0.0;  // largest |log| chain magnitude seen

    void push(long long idx, const Amplitude& a, double chain_scale) {
        if (a.is_zero()) return;
        buckets[idx].push_back({a.phase, a.log_mag});
        opscale = std::max(opscale, chain_scale);
    }

    SparseVector finish() const {
        SparseVector out;
        double flush = flush_threshold(opscale);
        for (const auto& [idx, cs] : buckets) {
            Amplitude a = accumulate_amplitudes(cs, flush);
            if (!a.is_zero()) out.entries.emplace(idx, a);
        }
        return out;
    }
};

double abs_log(const Amplitude& a) { return a.is_zero() ? 0.0 : std::abs(a.log_mag); }

}  // namespace

void LogPolynomial::set(long long deg, const Amplitude& c) {
    if (deg < 0) throw std::invalid_argument("LogPolynomial: degrees must be non-negative");
    if (!c.is_zero()) coeffs[deg] = c;
}

SparseVector apply_shift_power(const WeightSequence& ws, const SparseVector& v, long long d) {
    if (d < 0) throw std::invalid_argument("apply_shift_power: requires d >= 0");
    if (d == 0) return v;
    SparseVector out;
    for (const auto& [k, amp] : v.entries) {
        Amplitude w = ws.range_amplitude(k - d + 1, k);
        out.set(k - d, amp * w);
    }
    return out;
}

SparseVector apply_dual_shift_power(const WeightSequence& ws, const SparseVector& v, long long d) {
    if (d < 0) throw std::invalid_argument("apply_dual_shift_power: requires d >= 0");
    if (d == 0) return v;
    SparseVector out;
    for (const auto& [k, amp] : v.entries) {
        Amplitude w = ws.range_amplitude(k + 1, k + d);
        out.set(k + d, amp * w);
    }
    return out;
}

namespace {

void push_polynomial_terms(Accumulator& acc, const WeightSequence& ws, const LogPolynomial& r,
                           const SparseVector& v) {
    for (const auto& [deg, coeff] : r.coeffs) {
        for (const auto& [k, amp] : v.entries) {
            Amplitude w = ws.range_amplitude(k - deg + 1, k);
            double chain = abs_log(coeff) + abs_log(amp) + abs_log(w);
            acc.push(k - deg, coeff * amp * w, chain);
        }
    }
}

}  // namespace

SparseVector apply_polynomial(const WeightSequence& ws, const LogPolynomial& r,
                              const SparseVector& v) {
    Accumulator acc;
    push_polynomial_terms(acc, ws, r, v);
    return acc.finish();
}

SparseVector apply_polynomial_minus(const WeightSequence& ws, const LogPolynomial& r,
                                    const SparseVector& v, const SparseVector& y) {
    Accumulator acc;
    push_polynomial_terms(acc, ws, r, v);
    for (const auto& [k, amp] : y.entries) acc.push(k, amp.negated(), abs_log(amp));
    return acc.finish();
}

SparseVector add(const SparseVector& a, const SparseVector& b) {
    Accumulator acc;
    for (const auto& [k, amp] : a.entries) acc.push(k, amp, abs_log(amp));
    for (const auto& [k, amp] : b.entries) acc.push(k, amp, abs_log(amp));
    return acc.finish();
}

SparseVector subtract(const SparseVector& a, const SparseVector& b) {
    Accumulator acc;
    for (const auto& [k, amp] : a.entries) acc.push(k, amp, abs_log(amp));
    for (const auto& [k, amp] : b.entries) acc.push(k, amp.negated(), abs_log(amp));
    return acc.finish();
}

SparseVector scale(const SparseVector& v, const Amplitude& c) {
    SparseVector out;
    if (c.is_zero()) return out;
    for (const auto& [k, amp] : v.entries) out.set(k, amp * c);
    return out;
}

double lp_norm_log(const SparseVector& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_log: requires p in [1, inf]");
    if (v.entries.empty()) return kLogZero;
    if (std::isinf(p)) {
        double m = kLogZero;
        for (const auto& [k, amp] : v.entries) m = std::max(m, amp.log_mag);
        return m;
    }
    double anchor = kLogZero;
    for (const auto& [k, amp] : v.entries) anchor = std::max(anchor, amp.log_mag);
    double s = 0.0;
    for (const auto& [k, amp] : v.entries) s += std::exp(p * (amp.log_mag - anchor));
    return anchor + std::log(s) / p;
}

Amplitude bilinear_pairing(const SparseVector& f, const SparseVector& x) {
    Accumulator acc;
    for (const auto& [k, fa] : f.entries) {
        auto it = x.entries.find(k);
        if (it == x.entries.end()) continue;
        Amplitude t = fa * it->second;
        acc.push(0, t, abs_log(fa) + abs_log(it->second));
    }
    SparseVector s = acc.finish();
    return s.entries.empty() ? Amplitude::zero() : s.entries.begin()->second;
}

double max_rel_entry_diff(const SparseVector& a, const SparseVector& b) {
    double worst = 0.0;
    for (const auto& [k, av] : a.entries) {
        auto it = b.entries.find(k);
        Amplitude bv = it == b.entries.end() ? Amplitude::zero() : it->second;
        worst = std::max(worst, amplitude_rel_diff(av, bv));
    }
    for (const auto& [k, bv] : b.entries)
        if (!a.entries.count(k)) worst = std::max(worst, amplitude_rel_diff(Amplitude::zero(), bv));
    return worst;
}

DiagonalSimilarity diagonal_similarity(const WeightSequence& w, const WeightSequence& u,
                                       long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("diagonal_similarity: empty window");
    for (long long n = lo; n <= hi; ++n) {
        double lw = w.log_abs_at(n);
        double lu = u.log_abs_at(n);
        if (std::abs(lw - lu) > 1e-12 * std::max(1.0, std::max(std::abs(lw), std::abs(lu))))
            throw std::invalid_argument("diagonal_similarity: modulus mismatch |w_n| != |u_n| at n=" +
                                        std::to_string(n));
    }
    DiagonalSimilarity out;
    out.lo = lo;
    out.d.reserve(static_cast<std::size_t>(hi - lo + 1));
    auto d_at = [&](long long n) -> cplx {
        Amplitude a;
        if (n == 0) {
            a = Amplitude::one();
        } else if (n > 0) {
            a = w.range_amplitude(1, n) * u.range_amplitude(1, n).inverse();
        } else {
            a = u.range_amplitude(n + 1, 0) * w.range_amplitude(n + 1, 0).inverse();
        }
        // |d_n| = 1 by the modulus precondition; materializing is safe
        return a.to_complex();
    };
    for (long long n = lo; n <= hi; ++n) {
        cplx d = d_at(n);
        out.d.push_back(d);
        out.max_unit_modulus_err = std::max(out.max_unit_modulus_err, std::abs(std::abs(d) - 1.0));
    }
    for (long long n = lo + 1; n <= hi; ++n) {
        cplx lhs = w.weight_at(n);
        cplx rhs = u.weight_at(n) * out.d[static_cast<std::size_t>(n - lo)] /
                   out.d[static_cast<std::size_t>(n - 1 - lo)];
        out.max_conjugation_err =
            std::max(out.max_conjugation_err, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return out;
}

IntertwinerCheck intertwiner_check(const WeightSequence& ws, long long m, long long half_width) {
    if (m < 0) throw std::invalid_argument("intertwiner_check: requires m >= 0");
    if (half_width < 1) throw std::invalid_argument("intertwiner_check: requires half_width >= 1");
    long long lo = -half_width;
    long long hi = 2 * m + half_width;
    ws.ensure_range(lo - 1, hi + 1);

    IntertwinerCheck out;
    out.m = m;
    out.lo = lo;
    auto d_at = [&](long long n) -> Amplitude {
        if (n == 0) return Amplitude::one();
        if (n > 0)
            return ws.range_amplitude(1, n) * ws.range_amplitude(2 * m + 1 - n, 2 * m).inverse();
        long long k = -n;
        return ws.range_amplitude(2 * m + 1, 2 * m + k) * ws.range_amplitude(1 - k, 0).inverse();
    };
    out.d.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long n = lo; n <= hi; ++n) out.d.push_back(d_at(n));

    double worst = 0.0;
    // (a) closed form for n > m
    for (long long n = m + 1; n <= half_width; ++n) {
        double a_n = ws.w_range_log(m + 1, m + n) - ws.w_range_log(m - n + 1, m);
        double rhs = -ws.w_range_log(m + 1, 2 * m) + ws.w_range_log(1, m) + a_n;
        double dplus = out.d[static_cast<std::size_t>(n + m - lo)].log_mag;
        double dminus = out.d[static_cast<std::size_t>(m - n - lo)].log_mag;
        double scale = std::max(1.0, std::abs(rhs));
        worst = std::max(worst, std::abs(dplus - rhs) / scale);
        worst = std::max(worst, std::abs(dminus - rhs) / scale);
    }
    // (b) intertwining S(J e_n) = J(T e_n), i.e. d_n w_{2m-n+1} = w_n d_{n-1}
    for (long long n = lo + 1; n <= hi; ++n) {
        Amplitude lhs = out.d[static_cast<std::size_t>(n - lo)] *
                        Amplitude::from_complex(ws.weight_at(2 * m - n + 1));
        Amplitude rhs = Amplitude::from_complex(ws.weight_at(n)) *
                        out.d[static_cast<std::size_t>(n - 1 - lo)];
        worst = std::max(worst, amplitude_rel_diff(lhs, rhs));
    }
    out.identity_residual = worst;
    return out;
}

double adjoint_orbit_functional(const WeightSequence& ws, const SparseVector& x,
                                const SparseVector& f, long long n_max) {
    if (n_max < 0) throw std::invalid_argument("adjoint_orbit_functional: requires n_max >= 0");
    double worst = 0.0;
    SparseVector xn = x;
    SparseVector fn = f;
    for (long long n = 0; n <= n_max; ++n) {
        Amplitude a = bilinear_pairing(f, xn);
        Amplitude b = bilinear_pairing(fn, x);
        worst = std::max(worst, amplitude_rel_diff(a, b));
        if (n < n_max) {
            xn = apply_shift_power(ws, xn, 1);
            fn = apply_dual_shift_power(ws, fn, 1);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

void append_num(std::string& s, double x) {
    char buf[64];
    if (std::isfinite(x))
        std::snprintf(buf, sizeof buf, "%.17g", x);
    else if (std::isnan(x))
        std::snprintf(buf, sizeof buf, "\"nan\"");
    else
        std::snprintf(buf, sizeof buf, x > 0 ? "\"inf\"" : "\"-inf\"");
    s += buf;
}

}  // namespace

std::string sparse_vector_json(const SparseVector& v) {
    bool log_form = false;
    for (const auto& [n, a] : v.entries)
        if (std::abs(a.log_mag) > 600.0) log_form = true;
    std::string s;
    if (!log_form) {
        s += "{\"entries\":[";
        bool first = true;
        for (const auto& [n, a] : v.entries) {
            if (!first) s += ",";
            first = false;
            cplx z = a.to_complex();
            s += "[" + std::to_string(n) + ",";
            append_num(s, z.real());
            s += ",";
            append_num(s, z.imag());
            s += "]";
        }
        s += "]}";
    } else {
        s += "{\"entries_log\":[";
        bool first = true;
        for (const auto& [n, a] : v.entries) {
            if (!first) s += ",";
            first = false;
            s += "[" + std::to_string(n) + ",";
            append_num(s, a.phase.real());
            s += ",";
            append_num(s, a.phase.imag());
            s += ",";
            append_num(s, a.log_mag);
            s += "]";
        }
        s += "]}";
    }
    return s;
}

SparseVector sparse_vector_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("sparse vector: invalid JSON: ") + e.what());
    }
    SparseVector v;
    if (j.contains("entries")) {
        for (const auto& e : j["entries"]) {
            if (!e.is_array() || e.size() != 3)
                throw std::invalid_argument("sparse vector: entries elements must be [n, re, im]");
            v.set(e[0].get<long long>(),
                  Amplitude::from_complex(cplx(e[1].get<double>(), e[2].get<double>())));
        }
    } else if (j.contains("entries_log")) {
        for (const auto& e : j["entries_log"]) {
            if (!e.is_array() || e.size() != 4)
                throw std::invalid_argument(
                    "sparse vector: entries_log elements must be [n, phase_re, phase_im, log_mag]");
            v.set(e[0].get<long long>(),
                  Amplitude::from_log(cplx(e[1].get<double>(), e[2].get<double>()),
                                      e[3].get<double>()));
        }
    } else {
        throw std::invalid_argument("sparse vector: missing \"entries\" or \"entries_log\"");
    }
    return v;
}

}  // namespace wbs
