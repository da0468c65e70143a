#include "wbs/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "wbs/parallel.hpp"

namespace wbs {

const char* criterion_name(CriterionId id) {
    switch (id) {
        case CriterionId::kSalasHypercyclic: return "salas_hypercyclic";
        case CriterionId::kSalasSupercyclic: return "salas_supercyclic";
        case CriterionId::kJointInfJM: return "joint_inf_jm";
        case CriterionId::kQuasinilpotent: return "quasinilpotent";
        case CriterionId::kFixedJRatio: return "fixed_j_ratio";
        case CriterionId::kDirectSumLq: return "direct_sum_lq";
        case CriterionId::kAagCyclic: return "aag_cyclic";
        case CriterionId::kScWitness: return "sc_witness";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

constexpr long long kGridCap = 10000000;  // guards accidental OOM-scale budgets

// Quantized comparison key for the hardest-m selection: per-m values that are
// equal in exact arithmetic land in one bucket regardless of prefix rounding,
// so the smallest-m tie-break fires and the pick is partition-independent.
long long quantize_1e9(double v) {
    if (std::isinf(v)) return v > 0 ? (1LL << 62) : -(1LL << 62);
    double s = v * 1e9;
    if (s >= 4.0e18) return (1LL << 62);
    if (s <= -4.0e18) return -(1LL << 62);
    return static_cast<long long>(std::nearbyint(s));
}

// ---------------------------------------------------------------------------
// Salas scans

CriterionReport salas_scan(const WeightSequence& ws, long long m_max, long long n_max, double tol,
                           int workers, bool ratio) {
    require(m_max >= 0 && m_max <= kGridCap, "salas: m_max out of range");
    require(n_max >= 1 && n_max <= kGridCap, "salas: n_max out of range");
    ws.ensure_range(-n_max, m_max + n_max + 1);

    struct Local {
        bool any = false;
        bool all_witnessed = true;
        long long worst_m = 0, worst_n = 1;
        double worst_metric = kLogZero;
    };
    auto blocks = run_blocks<Local>(m_max + 1, workers, [&](long long lo, long long hi) {
        Local L;
        for (long long m = lo; m < hi; ++m) {
            bool witnessed = false;
            long long pick_n = 1;
            double metric = kLogInf;
            double best = kLogInf;
            long long best_n = 1;
            for (long long n = 1; n <= n_max; ++n) {
                double left = ws.w_tilde_log(m - n + 1, m);
                double right = -ws.w_tilde_log(m + 1, m + n);
                double v = ratio ? left + right : std::max(left, right);
                if (v <= tol) {
                    witnessed = true;
                    pick_n = n;
                    metric = v;
                    break;
                }
                if (v < best) {
                    best = v;
                    best_n = n;
                }
            }
            if (!witnessed) {
                pick_n = best_n;
                metric = best;
            }
            L.all_witnessed = L.all_witnessed && witnessed;
            if (!L.any || quantize_1e9(metric) > quantize_1e9(L.worst_metric)) {
                L.any = true;
                L.worst_m = m;
                L.worst_n = pick_n;
                L.worst_metric = metric;
            }
        }
        return L;
    });

    Local all;
    all.any = false;
    for (const Local& L : blocks) {
        if (!L.any) continue;
        all.all_witnessed = all.all_witnessed && L.all_witnessed;
        if (!all.any || quantize_1e9(L.worst_metric) > quantize_1e9(all.worst_metric)) {
            all.any = true;
            all.worst_m = L.worst_m;
            all.worst_n = L.worst_n;
            all.worst_metric = L.worst_metric;
        }
    }

    CriterionReport r;
    r.id = ratio ? CriterionId::kSalasSupercyclic : CriterionId::kSalasHypercyclic;
    r.witnessed = all.all_witnessed;
    r.witness = {{"m_worst", all.worst_m}, {"n", all.worst_n}};
    r.value_log = all.worst_metric;
    r.tolerance_log = tol;
    r.horizon = {{"m_max", m_max}, {"n_max", n_max}};
    return r;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

CriterionReport salas_hypercyclic(const WeightSequence& ws, long long m_max, long long n_max,
                                  double tol, int workers) {
    return salas_scan(ws, m_max, n_max, tol, workers, false);
}

CriterionReport salas_supercyclic(const WeightSequence& ws, long long m_max, long long n_max,
                                  double tol, int workers) {
    return salas_scan(ws, m_max, n_max, tol, workers, true);
}

CriterionReport joint_inf_jm(const WeightSequence& ws, long long a, long long j_max,
                             long long m_max, double tol, int workers) {
    require(a >= 1, "joint_inf_jm: requires a >= 1");
    require(j_max >= 1 && j_max <= kGridCap, "joint_inf_jm: j_max out of range");
    require(m_max >= a && m_max <= kGridCap, "joint_inf_jm: requires m_max >= a");
    require(j_max * (m_max - a) <= kGridCap, "joint_inf_jm: grid out of range");
    ws.ensure_range(-j_max * (m_max - a) - 1, m_max + 1);

    struct Local {
        bool any = false;
        double v = 0.0;
        long long j = 0, m = 0;
    };
    auto better = [](const Local& x, const Local& y) {
        if (!y.any) return false;
        if (!x.any) return true;
        if (y.v != x.v) return y.v < x.v;
        if (y.m != x.m) return y.m < x.m;
        return y.j < x.j;
    };
    auto blocks = run_blocks<Local>(j_max, workers, [&](long long lo, long long hi) {
        Local best;
        for (long long j = lo + 1; j <= hi; ++j) {
            for (long long m = a; m <= m_max; ++m) {
                double v = -ws.w_tilde_log(1, m) + ws.w_range_log(-j * (m - a), 0) / static_cast<double>(j);
                Local cand{true, v, j, m};
                if (better(best, cand)) best = cand;
            }
        }
        return best;
    });
    Local best;
    for (const Local& L : blocks)
        if (better(best, L)) best = L;

    CriterionReport r;
    r.id = CriterionId::kJointInfJM;
    r.witnessed = best.any && best.v <= tol;
    r.witness = {{"j", best.j}, {"m", best.m}};
    r.value_log = best.v;
    r.tolerance_log = tol;
    r.horizon = {{"a", a}, {"j_max", j_max}, {"m_max", m_max}};
    return r;
}

CriterionReport quasinilpotent(const WeightSequence& ws, long long n_max, double tol,
                               int workers) {
    require(n_max >= 1 && n_max <= kGridCap, "quasinilpotent: n_max out of range");
    ws.ensure_range(-n_max, 1);

    std::vector<double> trace(static_cast<std::size_t>(n_max));
    struct Local {
        bool any = false;
        double v = 0.0;
        long long n = 0;
    };
    auto blocks = run_blocks<Local>(n_max, workers, [&](long long lo, long long hi) {
        Local best;
        for (long long i = lo; i < hi; ++i) {
            long long n = i + 1;
            double v = ws.w_range_log(1 - n, 0) / static_cast<double>(n);
            trace[static_cast<std::size_t>(i)] = v;
            if (!best.any || v < best.v || (v == best.v && n < best.n)) best = {true, v, n};
        }
        return best;
    });
    Local best;
    for (const Local& L : blocks)
        if (L.any && (!best.any || L.v < best.v || (L.v == best.v && L.n < best.n))) best = L;

    CriterionReport r;
    r.id = CriterionId::kQuasinilpotent;
    r.witnessed = best.v <= tol;
    r.witness = {{"n", best.n}};
    r.value_log = best.v;
    r.tolerance_log = tol;
    r.horizon = {{"n_max", n_max}};
    r.trace = std::move(trace);
    return r;
}

CriterionReport fixed_j_ratio(const WeightSequence& ws, long long j, long long a,
                              long long m_max, double tol, int workers) {
    require(j >= 1, "fixed_j_ratio: requires j >= 1");
    require(a >= 1, "fixed_j_ratio: requires a >= 1");
    require(m_max >= 1 && m_max <= kGridCap, "fixed_j_ratio: m_max out of range");
    long long m_min = std::max<long long>(1, (a + j - 1) / j);  // first m with a - j m <= 0
    require(m_min <= m_max, "fixed_j_ratio: horizon excludes every admissible m");
    require(j * m_max <= kGridCap, "fixed_j_ratio: grid out of range");
    ws.ensure_range(a - j * m_max - 1, m_max + 1);

    struct Local {
        bool any = false;
        double v = 0.0;
        long long m = 0;
    };
    auto blocks = run_blocks<Local>(m_max - m_min + 1, workers, [&](long long lo, long long hi) {
        Local best;
        for (long long i = lo; i < hi; ++i) {
            long long m = m_min + i;
            double v = ws.w_range_log(a - j * m, 0) - static_cast<double>(j) * ws.w_tilde_log(1, m);
            if (!best.any || v < best.v || (v == best.v && m < best.m)) best = {true, v, m};
        }
        return best;
    });
    Local best;
    for (const Local& L : blocks)
        if (L.any && (!best.any || L.v < best.v || (L.v == best.v && L.m < best.m))) best = L;

    CriterionReport r;
    r.id = CriterionId::kFixedJRatio;
    r.witnessed = best.v <= tol;
    r.witness = {{"m", best.m}};
    r.value_log = best.v;
    r.tolerance_log = tol;
    r.horizon = {{"j", j}, {"a", a}, {"m_min", m_min}, {"m_max", m_max}};
    return r;
}

CriterionReport direct_sum_lq(const WeightSequence& ws, double p1, double p2, long long m,
                              long long n_max, double tol) {
    require(p1 >= 1.0 && p2 >= 1.0, "direct_sum_lq: requires p1, p2 in [1, inf]");
    require(m >= 0, "direct_sum_lq: requires m >= 0");
    require(n_max >= 4 && n_max <= kGridCap, "direct_sum_lq: n_max out of range");
    double q;
    if (!std::isinf(p1) && !std::isinf(p2)) {
        q = p1 + p2 < p1 * p2 ? (p1 * p2) / (p1 * p2 - p1 - p2) : kLogInf;
    } else if (std::isinf(p1) && std::isinf(p2)) {
        q = 1.0;
    } else {
        double pf = std::isinf(p1) ? p2 : p1;
        q = pf > 1.0 ? pf / (pf - 1.0) : kLogInf;
    }
    ws.ensure_range(m - n_max, m + n_max + 1);

    std::vector<double> trace(static_cast<std::size_t>(n_max));
    for (long long n = 1; n <= n_max; ++n)
        trace[static_cast<std::size_t>(n - 1)] =
            ws.w_tilde_log(m + 1, m + n) - ws.w_tilde_log(m - n + 1, m);

    CriterionReport r;
    r.id = CriterionId::kDirectSumLq;
    r.horizon = {{"m", m}, {"n_max", n_max}};
    r.details.emplace_back("q", std::isinf(q) ? "inf" : fmt17(q));

    if (std::isinf(q)) {
        // l_inf evidence: the trace must stop rising within the first half.
        long long last_rise = 0;
        double sup = trace[0];
        long long n_sup = 1;
        for (long long n = 2; n <= n_max; ++n) {
            double prev = trace[static_cast<std::size_t>(n - 2)];
            double cur = trace[static_cast<std::size_t>(n - 1)];
            if (cur > prev + 1e-12 * std::max(1.0, std::abs(cur))) last_rise = n;
            if (cur > sup) {
                sup = cur;
                n_sup = n;
            }
        }
        r.witnessed = last_rise <= n_max / 2;
        r.witness = {{"n_sup", n_sup}, {"tail_start", last_rise + 1}};
        r.value_log = sup;
        r.tolerance_log = kLogInf;
        r.details.emplace_back("mode", "linf_bound");
        r.details.emplace_back("sup_log", fmt17(sup));
    } else {
        std::vector<double> terms(trace.size());
        for (std::size_t i = 0; i < trace.size(); ++i) terms[i] = q * trace[i];
        double total = log_sum_exp(terms);
        std::vector<double> block(terms.begin() + static_cast<long>(n_max / 2), terms.end());
        double block_log = log_sum_exp(block);
        double frac = block_log - total;
        std::vector<double> xs, ys;
        for (long long n = n_max / 2 + 1; n <= n_max; ++n) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(trace[static_cast<std::size_t>(n - 1)]);
        }
        double s = -fit_slope(xs, ys);  // a_n ~ n^{-s}
        r.witnessed = frac <= tol;
        r.witness = {{"block_lo", n_max / 2 + 1}};
        r.value_log = frac;
        r.tolerance_log = tol;
        r.details.emplace_back("mode", "lq_blocks");
        r.details.emplace_back("partial_sum_log", fmt17(total));
        r.details.emplace_back("block_fraction_log", fmt17(frac));
        r.details.emplace_back("fitted_decay_exponent", fmt17(s));
    }
    r.trace = std::move(trace);
    return r;
}

// ---------------------------------------------------------------------------
// rho specs and the alpha-sequence test

RhoSpec RhoSpec::constant(double c) {
    require(c > 0.0, "rho spec: constant c must be > 0");
    return {kConstant, c, 0.0};
}
RhoSpec RhoSpec::power(double c, double e) {
    require(c > 0.0, "rho spec: power c must be > 0");
    require(e >= 0.0, "rho spec: power exponent must be >= 0");
    return {kPower, c, e};
}
RhoSpec RhoSpec::stretched_exp(double c, double e) {
    require(c >= 0.0, "rho spec: stretched_exp c must be >= 0");
    require(e >= 0.0 && e < 1.0, "rho spec: stretched_exp exponent must be in [0, 1)");
    return {kStretchedExp, c, e};
}

double RhoSpec::log_at(long long n) const {
    double x = static_cast<double>(n);
    switch (kind) {
        case kConstant: return std::log(c);
        case kPower: return std::log(c) + e * std::log(x);
        case kStretchedExp: return c * std::pow(x, e);
    }
    return 0.0;
}

std::string RhoSpec::label() const {
    char buf[96];
    switch (kind) {
        case kConstant: std::snprintf(buf, sizeof buf, "constant(%g)", c); break;
        case kPower: std::snprintf(buf, sizeof buf, "power(%g,%g)", c, e); break;
        case kStretchedExp: std::snprintf(buf, sizeof buf, "stretched_exp(%g,%g)", c, e); break;
    }
    return buf;
}

RhoSpec RhoSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("rho spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rho") || !j["rho"].is_string())
        throw std::invalid_argument("rho spec: missing string field \"rho\"");
    std::string kind = j["rho"].get<std::string>();
    auto num = [&](const char* f) {
        if (!j.contains(f) || !j[f].is_number())
            throw std::invalid_argument(std::string("rho spec: missing numeric field \"") + f + "\"");
        return j[f].get<double>();
    };
    if (kind == "constant") return constant(num("c"));
    if (kind == "power") return power(num("c"), num("exponent"));
    if (kind == "stretched_exp") return stretched_exp(num("c"), num("exponent"));
    throw std::invalid_argument("rho spec: unknown kind \"" + kind + "\"");
}

CriterionReport aag_cyclic(const WeightSequence& ws, double p, long long k, const RhoSpec& rho,
                           long long n_max, double tol) {
    require(p >= 1.0, "aag_cyclic: requires p in [1, inf]");
    require(k >= 1, "aag_cyclic: requires k >= 1");
    require(n_max >= 8 && n_max <= kGridCap, "aag_cyclic: n_max out of range");
    ws.ensure_range(-n_max, n_max + 1);
    double q = std::isinf(p) ? 1.0 : (p == 1.0 ? kLogInf : p / (p - 1.0));

    CriterionReport r;
    r.id = CriterionId::kAagCyclic;
    r.horizon = {{"k", k}, {"n_max", n_max}};
    r.tolerance_log = tol;
    r.details.emplace_back("rho", rho.label());
    r.details.emplace_back("q", std::isinf(q) ? "inf" : fmt17(q));
    r.details.emplace_back("note", "heuristic horizon check");

    long long half = n_max / 2;
    long long quarter = std::max<long long>(2, n_max / 4);

    // (i) ln+ rho_n / sqrt(n) trending to 0
    auto rtrend = [&](long long n) {
        return std::max(0.0, rho.log_at(n)) / std::sqrt(static_cast<double>(n));
    };
    double rq = rtrend(quarter), rh = rtrend(half), rm = rtrend(n_max);
    bool h_rho = rm <= rh + 1e-12 && rh <= rq + 1e-12 && rm <= 0.9 * rq + 1e-9;
    // (ii) alpha_{-n} = O(n^k): no new highs of log alpha_{-n} - k log n
    // (iii) alpha_n = O(rho_n): no new highs of log alpha_n - log rho_n
    auto no_new_high = [&](auto f) {
        double first = kLogZero, last = kLogZero;
        for (long long n = 1; n <= half; ++n) first = std::max(first, f(n));
        for (long long n = half + 1; n <= n_max; ++n) last = std::max(last, f(n));
        return last <= first + 1e-9;
    };
    bool h_neg = no_new_high([&](long long n) {
        return ws.alpha_log(-n) - static_cast<double>(k) * std::log(static_cast<double>(n));
    });
    bool h_pos = no_new_high([&](long long n) { return ws.alpha_log(n) - rho.log_at(n); });
    r.details.emplace_back("hypothesis_rho", h_rho ? "held" : "failed");
    r.details.emplace_back("hypothesis_alpha_minus", h_neg ? "held" : "failed");
    r.details.emplace_back("hypothesis_alpha_plus", h_pos ? "held" : "failed");

    std::string membership = "unresolved";
    std::string conclusion = "undetermined";
    double value = 0.0;
    double tolerance = 0.0;
    bool resolved = false;

    if (std::isinf(q)) {
        // {alpha_n^{-1}} in l_inf <=> -log alpha_n bounded above (both sides)
        auto growth = [&](int sign) {
            double first = kLogZero, last = kLogZero;
            for (long long n = 1; n <= half; ++n) first = std::max(first, -ws.alpha_log(sign * n));
            for (long long n = half + 1; n <= n_max; ++n)
                last = std::max(last, -ws.alpha_log(sign * n));
            return last - first;
        };
        double g = std::max(growth(+1), growth(-1));
        if (g <= 1e-9) {
            membership = "bounded";
            conclusion = "non_cyclic";
            value = g;
            tolerance = 1e-9;
            resolved = true;
            r.details.emplace_back("alpha_inv_linf_bounded", "true");
        } else if (g >= std::log(2.0)) {
            membership = "diverges";
            conclusion = "cyclic";
            value = -g;
            tolerance = -std::log(2.0);
            resolved = true;
            r.details.emplace_back("alpha_inv_linf_bounded", "false");
        }
    } else {
        // fitted decay exponents of alpha_n^{-q} ~ n^{-s} on each side
        const double margin = 0.05;
        auto side_exp = [&](int sign) {
            std::vector<double> xs, ys;
            for (long long n = half; n <= n_max; ++n) {
                xs.push_back(std::log(static_cast<double>(n)));
                ys.push_back(-q * ws.alpha_log(sign * n));
            }
            return -fit_slope(xs, ys);
        };
        double s_min = std::min(side_exp(+1), side_exp(-1));
        r.details.emplace_back("fitted_min_decay_exponent", fmt17(s_min));
        if (s_min <= 1.0 - margin) {
            membership = "diverges";
            conclusion = "cyclic";
            value = s_min - 1.0;
            tolerance = -margin;
            resolved = true;
        } else if (s_min >= 1.0 + margin) {
            membership = "converges";
            conclusion = "non_cyclic";
            value = 1.0 - s_min;
            tolerance = -margin;
            resolved = true;
        }
    }
    r.details.emplace_back("membership", membership);
    bool hypotheses = h_rho && h_neg && h_pos;
    r.details.emplace_back("conclusion", hypotheses && resolved ? conclusion : "undetermined");
    r.witnessed = hypotheses && resolved;
    r.value_log = value;
    r.tolerance_log = tolerance;
    return r;
}

CriterionReport sc_witness(const WeightSequence& ws, long long support_radius, long long n_max,
                           double tol) {
    require(support_radius >= 0, "sc_witness: requires support_radius >= 0");
    require(n_max >= 1 && n_max <= kGridCap, "sc_witness: n_max out of range");
    long long rr = support_radius;
    ws.ensure_range(-rr - n_max, rr + n_max + 1);

    std::vector<double> chain;  // accepted n_k
    double best_value = kLogInf;
    const double step = std::log(2.0);
    for (long long n = 1; n <= n_max; ++n) {
        double worst_s = kLogZero, best_t = kLogInf;
        for (long long s = -rr; s <= rr; ++s) worst_s = std::max(worst_s, ws.w_tilde_log(s - n + 1, s));
        for (long long t = -rr; t <= rr; ++t) best_t = std::min(best_t, ws.w_tilde_log(t + 1, t + n));
        double v = worst_s - best_t;
        double requirement = tol - static_cast<double>(chain.size()) * step;
        if (v <= requirement) {
            chain.push_back(static_cast<double>(n));
            best_value = std::min(best_value, v);
        }
    }

    CriterionReport r;
    r.id = CriterionId::kScWitness;
    r.witnessed = !chain.empty();
    long long count = static_cast<long long>(chain.size());
    r.witness = {{"count", count},
                 {"n_first", count ? static_cast<long long>(chain.front()) : 0},
                 {"n_last", count ? static_cast<long long>(chain.back()) : 0}};
    r.value_log = count ? best_value : kLogInf;
    r.tolerance_log = tol;
    r.horizon = {{"radius", support_radius}, {"n_max", n_max}};
    r.trace = std::move(chain);
    return r;
}

// ---------------------------------------------------------------------------
// classification

namespace {

struct Edge {
    int from, to;
    const char* name;
};

// Implications valid for every weighted bilateral shift on l_p / c_0:
//   C1 => C2 (the criterion implies supercyclicity)
//   C2 => C1 (a supercyclic shift satisfies the criterion)
//   C1 => C4 (the criterion passes to the direct sum)
//   C2 => C3, C3 => C6, C6 => C5 (general operators)
//   C5 => C4 (power cyclicity transfers to the direct sum for shifts)
constexpr Edge kEdges[] = {
    {1, 2, "criterion_to_supercyclic"}, {2, 1, "shift_converse"},
    {1, 4, "criterion_to_direct_sum"},  {2, 3, "norm_to_weak"},
    {3, 6, "weak_powers"},              {6, 5, "exists_power"},
    {5, 4, "power_to_direct_sum"}};

std::string edge_token(const Edge& e) {
    return "C" + std::to_string(e.from) + "=>C" + std::to_string(e.to) + "[" + e.name + "]";
}

}  // namespace

const std::vector<std::string>& classification_edge_tokens() {
    static const std::vector<std::string> toks = [] {
        std::vector<std::string> v;
        for (const Edge& e : kEdges) v.push_back(edge_token(e));
        return v;
    }();
    return toks;
}

ClassificationReport classify(const WeightSequence& ws, double p, const Budgets& b) {
    require(p >= 1.0, "classify: requires p in [1, inf]");
    ClassificationReport rep;
    rep.family = ws.label();
    rep.p = p;
    rep.budgets = b;

    CriterionReport sc = salas_supercyclic(ws, b.m_max, b.n_max, b.tol, b.workers);
    CriterionReport hc = salas_hypercyclic(ws, b.m_max, b.n_max, b.tol, b.workers);
    CriterionReport ji = joint_inf_jm(ws, 1, b.j_max, std::max<long long>(1, b.m_max), b.tol, b.workers);
    CriterionReport qn = quasinilpotent(ws, b.n_max, b.tol, b.workers);
    CriterionReport lq = direct_sum_lq(ws, p, p, 0, b.n_max, b.tol);
    rep.runs = {sc, hc, ji, qn, lq};

    bool anchorW = sc.witnessed || hc.witnessed;
    std::vector<std::string> anchorW_via =
        sc.witnessed ? std::vector<std::string>{"salas_supercyclic"}
                     : std::vector<std::string>{"salas_hypercyclic", "hypercyclic=>supercyclic[trivial]"};
    bool anchorR = lq.witnessed;
    std::vector<std::string> anchorR_via = {"direct_sum_lq"};

    rep.conditions.resize(6);
    for (int i = 0; i < 6; ++i) {
        rep.conditions[i].name = "C" + std::to_string(i + 1);
        rep.conditions[i].status = "undetermined";
    }
    auto set_cond = [&](int c, const std::string& st, std::vector<std::string> via) {
        rep.conditions[c - 1].status = st;
        rep.conditions[c - 1].via = std::move(via);
    };

    if (p <= 2.0) {
        if (anchorW && anchorR) {
            for (int c = 1; c <= 6; ++c) {
                auto via = anchorW_via;
                via.insert(via.end(), anchorR_via.begin(), anchorR_via.end());
                set_cond(c, "conflict", via);
            }
        } else if (anchorW) {
            for (int c = 1; c <= 6; ++c) {
                auto via = anchorW_via;
                if (c != 2) via.push_back("equivalence(C2)");
                set_cond(c, "witnessed", via);
            }
        } else if (anchorR) {
            for (int c = 1; c <= 6; ++c) {
                auto via = anchorR_via;
                if (c != 4) via.push_back("equivalence(C4)");
                set_cond(c, "refuted", via);
            }
        }
    } else {
        // forward closure from a witnessed anchor, contrapositive closure
        // from a refuted one, over the fixed edge set
        bool wset[7] = {};
        bool rset[7] = {};
        int wparent[7] = {};
        int rparent[7] = {};
        const Edge* wvia[7] = {};
        const Edge* rvia[7] = {};
        if (anchorW) wset[2] = true;
        if (anchorR) rset[4] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Edge& e : kEdges) {
                if (wset[e.from] && !wset[e.to]) {
                    wset[e.to] = true;
                    wparent[e.to] = e.from;
                    wvia[e.to] = &e;
                    changed = true;
                }
                if (rset[e.to] && !rset[e.from]) {
                    rset[e.from] = true;
                    rparent[e.from] = e.to;
                    rvia[e.from] = &e;
                    changed = true;
                }
            }
        }
        for (int c = 1; c <= 6; ++c) {
            if (wset[c] && rset[c]) {
                set_cond(c, "conflict", {"salas+direct_sum_lq disagree"});
                continue;
            }
            if (wset[c]) {
                std::vector<std::string> via = anchorW_via;
                std::vector<std::string> path;
                for (int x = c; x != 2; x = wparent[x]) path.push_back(edge_token(*wvia[x]));
                via.insert(via.end(), path.rbegin(), path.rend());
                set_cond(c, "witnessed", via);
            } else if (rset[c]) {
                std::vector<std::string> via = anchorR_via;
                std::vector<std::string> path;
                for (int x = c; x != 4; x = rparent[x])
                    path.push_back("contrapositive:" + edge_token(*rvia[x]));
                via.insert(via.end(), path.begin(), path.end());
                set_cond(c, "refuted", via);
            }
        }
    }

    rep.cyclic.name = "cyclic";
    rep.cyclic.status = "undetermined";
    if (rep.conditions[1].status == "witnessed") {
        rep.cyclic.status = "witnessed";
        rep.cyclic.via = rep.conditions[1].via;
        rep.cyclic.via.push_back("supercyclic=>cyclic[trivial]");
    } else if (qn.witnessed) {
        rep.cyclic.status = "witnessed";
        rep.cyclic.via = {"quasinilpotent", "quasinilpotent=>cyclic[spectral_radius]"};
    } else if (ji.witnessed) {
        rep.cyclic.status = "witnessed";
        rep.cyclic.via = {"joint_inf_jm", "joint_inf_jm=>cyclic[a=1_partial]"};
    }
    return rep;
}

}  // namespace wbs
