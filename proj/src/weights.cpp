#include "wbs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wbs {

namespace {

std::string fmt_param(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string fmt_param(cplx z) {
    if (z.imag() == 0.0) return fmt_param(z.real());
    return fmt_param(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_param(std::abs(z.imag())) + "i";
}

}  // namespace

struct WeightSequence::Impl {
    struct Constant {
        cplx c;
    };
    struct Beauzamy {
        cplx a, b;  // a on n <= 0, b on n > 0
    };
    struct PolyDecay {
        double a, b, alpha;
        long long n0;
    };
    struct SupExp {
        double gamma;
    };
    struct Table {
        long long lo, hi;
        std::vector<cplx> w;
        TableTail left, right;
    };
    std::variant<Constant, Beauzamy, PolyDecay, SupExp, Table> fam;

    double sup_abs = 0.0;
    TailInfoSide left_info{}, right_info{};
    std::string label;

    // prefix cache; appended values never change, so query results are
    // independent of the growth history
    mutable std::shared_mutex mx;
    mutable long long cov_lo = 0, cov_hi = -1;       // covered weight indices
    mutable std::vector<CompensatedSum> pre_r;       // pre_r[i] = sum_{0<=j<i} log|w_j|
    mutable std::vector<CompensatedSum> pre_l;       // pre_l[i] = sum_{-i<=j<0} log|w_j|
    mutable std::vector<cplx> ph_r, ph_l;            // matching unit-phase prefixes

    cplx weight(long long n) const {
        if (auto* c = std::get_if<Constant>(&fam)) return c->c;
        if (auto* b = std::get_if<Beauzamy>(&fam)) return n <= 0 ? b->a : b->b;
        if (auto* p = std::get_if<PolyDecay>(&fam)) {
            if (n >= p->n0) return 1.0 - p->a * std::pow(static_cast<double>(n), -p->alpha);
            if (n <= -p->n0) return 1.0 - p->b * std::pow(static_cast<double>(-n), -p->alpha);
            return 1.0;
        }
        if (auto* s = std::get_if<SupExp>(&fam))
            return std::exp(-s->gamma * static_cast<double>(n < 0 ? -n : n));
        const Table& t = std::get<Table>(fam);
        if (n >= t.lo && n <= t.hi) return t.w[static_cast<std::size_t>(n - t.lo)];
        const TableTail& tail = n < t.lo ? t.left : t.right;
        switch (tail.kind) {
            case TableTail::kConstant:
                return tail.c;
            case TableTail::kRepeatLast:
                return n < t.lo ? t.w.front() : t.w.back();
            default:
                throw std::domain_error("table weight undefined at n=" + std::to_string(n) +
                                        ": no " + (n < t.lo ? "left" : "right") + " tail rule");
        }
    }

    // log|w_n| computed analytically per family: the materialized weight can
    // underflow (supexp at |n| ~ 750) while its log stays representable.
    double log_abs(long long n) const {
        if (auto* s = std::get_if<SupExp>(&fam))
            return -s->gamma * static_cast<double>(n < 0 ? -n : n);
        return std::log(std::abs(weight(n)));
    }

    cplx unit_phase(long long n) const {
        if (std::holds_alternative<SupExp>(fam)) return {1.0, 0.0};
        if (auto* p = std::get_if<PolyDecay>(&fam)) {
            double w = 1.0;
            if (n >= p->n0) w = 1.0 - p->a * std::pow(static_cast<double>(n), -p->alpha);
            else if (n <= -p->n0) w = 1.0 - p->b * std::pow(static_cast<double>(-n), -p->alpha);
            return {w < 0.0 ? -1.0 : 1.0, 0.0};
        }
        cplx w = weight(n);
        return w / std::abs(w);
    }

    void extend_to(long long lo, long long hi) const {
        if (cov_hi < cov_lo) {  // first touch
            pre_r.assign(1, {});
            pre_l.assign(1, {});
            ph_r.assign(1, cplx(1.0, 0.0));
            ph_l.assign(1, cplx(1.0, 0.0));
            cov_lo = 0;
            cov_hi = -1;  // covers P(0) only; weights none yet
        }
        long long width = std::max<long long>(cov_hi - cov_lo + 1, 8);
        long long target_hi = hi > cov_hi ? std::max(hi, cov_hi + width) : cov_hi;
        long long target_lo = lo < cov_lo ? std::min(lo, cov_lo - width) : cov_lo;
        while (cov_hi < target_hi) {
            ++cov_hi;
            CompensatedSum s = pre_r.back();
            s.add(log_abs(cov_hi));
            pre_r.push_back(s);
            cplx p = ph_r.back() * unit_phase(cov_hi);
            ph_r.push_back(p / std::abs(p));
        }
        while (cov_lo > target_lo) {
            --cov_lo;
            CompensatedSum s = pre_l.back();
            s.add(log_abs(cov_lo));
            pre_l.push_back(s);
            cplx p = ph_l.back() * unit_phase(cov_lo);
            ph_l.push_back(p / std::abs(p));
        }
    }

    bool covers(long long lo, long long hi) const { return lo >= cov_lo && hi <= cov_hi; }

    template <class F>
    auto with_cover(long long lo, long long hi, F&& f) const {
        {
            std::shared_lock sl(mx);
            if (covers(lo, hi)) return f();
        }
        std::unique_lock ul(mx);
        extend_to(lo, hi);
        return f();
    }

    // P(n): exact prefix sum_{0<=j<n} (n >= 0) or -sum_{n<=j<0} (n < 0) of
    // log|w_j|, in compensated form. Assumes coverage.
    PrefixPair P(long long n) const {
        if (n >= 0) {
            const CompensatedSum& s = pre_r[static_cast<std::size_t>(n)];
            return {s.hi, s.lo};
        }
        const CompensatedSum& s = pre_l[static_cast<std::size_t>(-n)];
        return {-s.hi, -s.lo};
    }

    cplx Phi(long long n) const {
        if (n >= 0) return ph_r[static_cast<std::size_t>(n)];
        return std::conj(ph_l[static_cast<std::size_t>(-n)]);
    }

    double range_log(long long a, long long b) const {
        if (a == b + 1) return 0.0;
        return with_cover(a, b, [&] { return prefix_diff(P(b + 1), P(a)); });
    }

    cplx range_phase(long long a, long long b) const {
        if (a == b + 1) return cplx(1.0, 0.0);
        return with_cover(a, b, [&] {
            cplx q = Phi(b + 1) * std::conj(Phi(a));
            return q / std::abs(q);
        });
    }
};

// ---------------------------------------------------------------------------
// construction

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

WeightSequence WeightSequence::constant(cplx c) {
    require(std::abs(c) > 0.0, "constant family: c must be nonzero");
    auto impl = std::make_shared<Impl>();
    impl->fam = Impl::Constant{c};
    impl->sup_abs = std::abs(c);
    impl->left_info = {true, 0, std::log(std::abs(c))};
    impl->right_info = {true, 0, std::log(std::abs(c))};
    impl->label = "constant(" + fmt_param(c) + ")";
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::beauzamy(cplx a, cplx b) {
    require(std::abs(a) > 0.0 && std::abs(b) > 0.0, "beauzamy family: a, b must be nonzero");
    auto impl = std::make_shared<Impl>();
    impl->fam = Impl::Beauzamy{a, b};
    impl->sup_abs = std::max(std::abs(a), std::abs(b));
    impl->left_info = {true, 0, std::log(std::abs(a))};
    impl->right_info = {true, 1, std::log(std::abs(b))};
    impl->label = "beauzamy(" + fmt_param(a) + "," + fmt_param(b) + ")";
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::polydecay(double a, double b, double alpha, long long n0) {
    require(alpha > 0.0, "polydecay family: alpha must be > 0");
    require(n0 >= 1, "polydecay family: n0 must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->fam = Impl::PolyDecay{a, b, alpha, n0};

    // 1 - c*t^(-alpha) is increasing in t, so |w| peaks at t = n0 on the
    // negative stretch and is monotone past the sign crossing. A zero can
    // only sit at the integers adjacent to t0 = c^(1/alpha).
    auto side_scan = [&](double c, const char* side) {
        long long thresh = n0;
        double peak = std::max(1.0, std::abs(1.0 - c * std::pow(static_cast<double>(n0), -alpha)));
        if (c > 0.0) {
            double t0 = std::pow(c, 1.0 / alpha);
            if (std::ceil(t0) > static_cast<double>(n0))
                thresh = static_cast<long long>(std::ceil(t0));
            long long base = static_cast<long long>(std::floor(t0));
            for (long long t = base - 1; t <= base + 2; ++t) {
                if (t < n0) continue;
                double w = 1.0 - c * std::pow(static_cast<double>(t), -alpha);
                require(w != 0.0, std::string("polydecay family: zero weight on the ") + side +
                                      " side at |n|=" + std::to_string(t));
            }
        }
        return std::pair<long long, double>(thresh, peak);
    };
    auto [rt, rpeak] = side_scan(a, "right");
    auto [lt, lpeak] = side_scan(b, "left");
    impl->sup_abs = std::max({1.0, rpeak, lpeak});
    impl->right_info = {true, rt, 0.0};
    impl->left_info = {true, -lt, 0.0};
    impl->label = "polydecay(" + fmt_param(a) + "," + fmt_param(b) + "," + fmt_param(alpha) + "," +
                  std::to_string(n0) + ")";
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::supexp(double gamma) {
    require(gamma >= 0.0, "supexp family: gamma must be >= 0 (the sequence must stay bounded)");
    auto impl = std::make_shared<Impl>();
    impl->fam = Impl::SupExp{gamma};
    impl->sup_abs = 1.0;
    double lim = gamma == 0.0 ? 0.0 : kLogZero;
    impl->left_info = {true, 0, lim};
    impl->right_info = {true, 0, lim};
    impl->label = "supexp(" + fmt_param(gamma) + ")";
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::table(const std::map<long long, cplx>& entries, TableTail left,
                                     TableTail right) {
    require(!entries.empty(), "table family: entries must be nonempty");
    long long lo = entries.begin()->first;
    long long hi = entries.rbegin()->first;
    require(hi - lo + 1 == static_cast<long long>(entries.size()),
            "table family: entries must cover a contiguous index window");
    std::vector<cplx> w;
    w.reserve(entries.size());
    for (const auto& [n, v] : entries) {
        require(std::abs(v) > 0.0, "table family: entries[" + std::to_string(n) + "] has |w| = 0");
        w.push_back(v);
    }
    require(left.kind != TableTail::kConstant || std::abs(left.c) > 0.0,
            "table family: left_tail constant must be nonzero");
    require(right.kind != TableTail::kConstant || std::abs(right.c) > 0.0,
            "table family: right_tail constant must be nonzero");

    auto impl = std::make_shared<Impl>();
    impl->fam = Impl::Table{lo, hi, std::move(w), left, right};
    const auto& t = std::get<Impl::Table>(impl->fam);
    double s = 0.0;
    for (const auto& v : t.w) s = std::max(s, std::abs(v));
    auto tail_abs = [&](const TableTail& tail, cplx edge) {
        if (tail.kind == TableTail::kConstant) return std::abs(tail.c);
        if (tail.kind == TableTail::kRepeatLast) return std::abs(edge);
        return 0.0;
    };
    double la = tail_abs(left, t.w.front());
    double ra = tail_abs(right, t.w.back());
    impl->sup_abs = std::max({s, la, ra});
    impl->left_info = {left.kind != TableTail::kNone, lo - 1,
                       la > 0.0 ? std::log(la) : kLogZero};
    impl->right_info = {right.kind != TableTail::kNone, hi + 1,
                        ra > 0.0 ? std::log(ra) : kLogZero};
    impl->label = "table[" + std::to_string(lo) + ".." + std::to_string(hi) + "]";
    return WeightSequence(std::move(impl));
}

// ---------------------------------------------------------------------------
// queries

cplx WeightSequence::weight_at(long long n) const { return impl_->weight(n); }

double WeightSequence::log_abs_at(long long n) const { return impl_->log_abs(n); }

double WeightSequence::w_tilde_log(long long a, long long b) const {
    if (a > b) throw std::invalid_argument("w_tilde_log: requires a <= b");
    return impl_->range_log(a, b);
}

double WeightSequence::w_range_log(long long a, long long b) const {
    if (a > b + 1) throw std::invalid_argument("w_range_log: requires a <= b + 1");
    return impl_->range_log(a, b);
}

cplx WeightSequence::phase_range(long long a, long long b) const {
    if (a > b + 1) throw std::invalid_argument("phase_range: requires a <= b + 1");
    return impl_->range_phase(a, b);
}

Amplitude WeightSequence::range_amplitude(long long a, long long b) const {
    if (a > b + 1) throw std::invalid_argument("range_amplitude: requires a <= b + 1");
    if (a == b + 1) return Amplitude::one();
    return Amplitude::from_log(impl_->range_phase(a, b), impl_->range_log(a, b));
}

double WeightSequence::alpha_log(long long n) const {
    if (n == 0) return 0.0;
    if (n > 0) return -w_tilde_log(1, n);
    return w_tilde_log(1 + n, 0);
}

NormBoundsLog WeightSequence::shift_power_norm_log(long long n, long long win_lo,
                                                   long long win_hi) const {
    if (n < 1) throw std::invalid_argument("shift_power_norm_log: requires n >= 1");
    if (win_lo > win_hi) throw std::invalid_argument("shift_power_norm_log: empty window");
    ensure_range(win_lo - n + 1, win_hi);
    double lower = kLogZero;
    for (long long k = win_lo; k <= win_hi; ++k)
        lower = std::max(lower, impl_->range_log(k - n + 1, k));

    const TailInfoSide& lt = impl_->left_info;
    const TailInfoSide& rt = impl_->right_info;
    double upper;
    bool tails_covered = lt.monotone && rt.monotone && win_lo <= lt.thresh &&
                         win_hi >= rt.thresh + n - 1;
    if (tails_covered) {
        // Beyond the scanned window the length-n products move monotonically
        // toward the tail limits, so the sup over all of Z is dominated by
        // the window max and the limiting products.
        upper = lower;
        if (!log_is_zero(lt.limit_log)) upper = std::max(upper, n * lt.limit_log);
        if (!log_is_zero(rt.limit_log)) upper = std::max(upper, n * rt.limit_log);
    } else {
        upper = n * std::log(impl_->sup_abs);
    }
    return {lower, std::max(lower, upper)};
}

double WeightSequence::sup_abs() const { return impl_->sup_abs; }
TailInfoSide WeightSequence::left_tail() const { return impl_->left_info; }
TailInfoSide WeightSequence::right_tail() const { return impl_->right_info; }

void WeightSequence::ensure_range(long long lo, long long hi) const {
    if (lo > hi) std::swap(lo, hi);
    impl_->with_cover(lo, hi, [] {});
}

const std::string& WeightSequence::label() const { return impl_->label; }

// ---------------------------------------------------------------------------
// JSON weight-spec parsing

namespace {

using nlohmann::json;

cplx parse_cnum(const json& j, const std::string& field) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("weight spec: field \"" + field +
                                "\" must be a number or [re, im]");
}

double parse_num(const json& j, const std::string& field) {
    if (!j.is_number()) throw std::invalid_argument("weight spec: field \"" + field + "\" must be a number");
    return j.get<double>();
}

const json& get_field(const json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end())
        throw std::invalid_argument("weight spec: missing field \"" + field + "\"");
    return *it;
}

WeightSequence::TableTail parse_tail(const json& j, const std::string& field) {
    if (j.is_string() && j.get<std::string>() == "repeat_last")
        return WeightSequence::TableTail::repeat_last();
    if (j.is_object() && j.contains("constant"))
        return WeightSequence::TableTail::constant(parse_cnum(j["constant"], field + ".constant"));
    throw std::invalid_argument("weight spec: field \"" + field +
                                "\" must be {\"constant\": c} or \"repeat_last\"");
}

}  // namespace

WeightSequence WeightSequence::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("weight spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("weight spec: top level must be an object");
    std::string fam = get_field(j, "family").is_string()
                          ? j["family"].get<std::string>()
                          : throw std::invalid_argument("weight spec: field \"family\" must be a string");
    if (fam == "constant") return constant(parse_cnum(get_field(j, "c"), "c"));
    if (fam == "beauzamy")
        return beauzamy(parse_cnum(get_field(j, "a"), "a"), parse_cnum(get_field(j, "b"), "b"));
    if (fam == "polydecay") {
        long long n0 = 2;
        if (j.contains("n0")) {
            if (!j["n0"].is_number_integer() || j["n0"].get<long long>() < 1)
                throw std::invalid_argument("weight spec: field \"n0\" must be an integer >= 1");
            n0 = j["n0"].get<long long>();
        }
        return polydecay(parse_num(get_field(j, "a"), "a"), parse_num(get_field(j, "b"), "b"),
                         parse_num(get_field(j, "alpha"), "alpha"), n0);
    }
    if (fam == "supexp") return supexp(parse_num(get_field(j, "gamma"), "gamma"));
    if (fam == "table") {
        const json& ent = get_field(j, "entries");
        if (!ent.is_array() || ent.empty())
            throw std::invalid_argument("weight spec: field \"entries\" must be a nonempty array");
        std::map<long long, cplx> entries;
        for (std::size_t i = 0; i < ent.size(); ++i) {
            const json& e = ent[i];
            std::string f = "entries[" + std::to_string(i) + "]";
            if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
                !e[1].is_number() || !e[2].is_number())
                throw std::invalid_argument("weight spec: field \"" + f + "\" must be [n, re, im]");
            long long n = e[0].get<long long>();
            cplx w(e[1].get<double>(), e[2].get<double>());
            if (std::abs(w) == 0.0)
                throw std::invalid_argument("weight spec: field \"" + f + "\" has |w| = 0");
            if (!entries.emplace(n, w).second)
                throw std::invalid_argument("weight spec: field \"" + f + "\" repeats index n=" +
                                            std::to_string(n));
        }
        TableTail lt = j.contains("left_tail") ? parse_tail(j["left_tail"], "left_tail")
                                               : TableTail::none();
        TableTail rt = j.contains("right_tail") ? parse_tail(j["right_tail"], "right_tail")
                                                : TableTail::none();
        return table(entries, lt, rt);
    }
    throw std::invalid_argument("weight spec: unknown family \"" + fam + "\"");
}

}  // namespace wbs
