// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Run with no arguments for the full table, --only <id> for one
// criterion, --list for the ids.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wbs/cli_app.hpp"
#include "wbs/constructor.hpp"
#include "wbs/criteria.hpp"
#include "wbs/report_json.hpp"

using namespace wbs;

namespace {

struct Check {
    std::string id;
    std::string desc;
    bool pass = true;
    std::string note;

    void expect(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            if (!note.empty()) note += "; ";
            note += why;
        }
    }
};

const double kTol3 = std::log(1e-3);
const double kTol6 = std::log(1e-6);

long long wit(const CriterionReport& r, const char* key) {
    for (const auto& [k, v] : r.witness)
        if (k == key) return v;
    return -999999;
}

std::string detail(const CriterionReport& r, const char* key) {
    for (const auto& [k, v] : r.details)
        if (k == key) return v;
    return "";
}

std::vector<WeightSequence> identity_families() {
    return {WeightSequence::constant(1.0), WeightSequence::beauzamy(2.0, 1.0),
            WeightSequence::beauzamy(1.0, 2.0), WeightSequence::supexp(1.0),
            WeightSequence::polydecay(1.0, 2.0, 0.5, 5)};
}

// --------------------------------------------------------------------------

Check check_1a() {
    Check c{"1a", "beauzamy(1,2): salas_supercyclic witnessed at m=0, n=10, value log 2^-10"};
    auto ws = WeightSequence::beauzamy(1.0, 2.0);
    auto r = salas_supercyclic(ws, 8, 64, kTol3);
    c.expect(r.witnessed, "not witnessed");
    c.expect(wit(r, "m_worst") == 0, "m_worst != 0");
    c.expect(wit(r, "n") == 10, "n != 10");
    c.expect(std::abs(r.value_log + 10.0 * std::log(2.0)) <= 1e-12, "value off log(2^-10)");
    return c;
}

Check check_1b() {
    Check c{"1b", "beauzamy(2,1): supercyclicity undetermined, direct-sum obstruction refutes C2..C6"};
    auto ws = WeightSequence::beauzamy(2.0, 1.0);
    c.expect(!salas_supercyclic(ws, 8, 64, kTol3).witnessed, "salas_supercyclic not undetermined");
    auto lq = direct_sum_lq(ws, 2.0, 2.0, 0, 64, kTol6);
    c.expect(lq.witnessed, "direct_sum_lq not witnessed");
    auto rep = classify(ws, 2.0, Budgets{kTol3, 8, 64, 16, 1});
    for (int i = 1; i < 6; ++i)
        c.expect(rep.conditions[i].status == "refuted", rep.conditions[i].name + " not refuted");
    bool equiv = false, anchor = false;
    for (const auto& cond : rep.conditions)
        for (const auto& tok : cond.via) {
            if (tok == "equivalence(C4)") equiv = true;
            if (tok == "direct_sum_lq") anchor = true;
        }
    c.expect(equiv && anchor, "justification chain missing equivalence/direct_sum_lq");
    return c;
}

Check check_1c() {
    Check c{"1c", "polydecay(1,2,0.75): supercyclic witnessed; polydecay(2,1,0.75): undetermined"};
    auto up = WeightSequence::polydecay(1.0, 2.0, 0.75, 2);
    auto rep = classify(up, 2.0, Budgets{kTol6, 8, 4096, 16, 1});
    c.expect(rep.runs[0].witnessed, "salas_supercyclic not witnessed");
    for (const auto& cond : rep.conditions)
        c.expect(cond.status == "witnessed", cond.name + " not witnessed");
    auto down = WeightSequence::polydecay(2.0, 1.0, 0.75, 2);
    c.expect(!salas_supercyclic(down, 8, 4096, kTol6).witnessed,
             "reversed family unexpectedly witnessed");
    return c;
}

Check check_1d_quasinilpotent() {
    Check c{"1d-quasinilpotent", "supexp(1): quasinilpotent witnessed, trace exactly -(n-1)/2"};
    auto ws = WeightSequence::supexp(1.0);
    auto r = quasinilpotent(ws, 4096, kTol6);
    c.expect(r.witnessed, "not witnessed");
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        if (std::abs(r.trace[i] + static_cast<double>(i) / 2.0) > 1e-12) {
            c.expect(false, "trace deviates at n=" + std::to_string(i + 1));
            break;
        }
    }
    return c;
}

Check check_1d_fixed_j() {
    Check c{"1d-fixed-j", "supexp(1): fixed_j_ratio(j=1,a=1) witnessed"};
    auto ws = WeightSequence::supexp(1.0);
    auto r = fixed_j_ratio(ws, 1, 1, 4096, kTol6);
    c.expect(r.witnessed, "not witnessed");
    if (!c.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "the j=1 ratio equals e^{+m} (min %.3g at m=%lld): the criterion quantity "
                      "diverges, so no tolerance can be met; j=2 is witnessed (value %.4g)",
                      std::exp(r.value_log), wit(r, "m"),
                      fixed_j_ratio(ws, 2, 1, 4096, kTol6).value_log);
        c.note = buf;
    }
    return c;
}

Check check_1e() {
    Check c{"1e", "constant(1): flat criteria undetermined at exactly 0, l_inf obstruction, alpha test"};
    auto ws = WeightSequence::constant(1.0);
    auto rh = salas_hypercyclic(ws, 8, 64, kTol6);
    auto rs = salas_supercyclic(ws, 8, 64, kTol6);
    auto rj = joint_inf_jm(ws, 1, 16, 8, kTol6);
    auto rq = quasinilpotent(ws, 64, kTol6);
    for (const auto* r : {&rh, &rs, &rj, &rq}) {
        c.expect(!r->witnessed, std::string(criterion_name(r->id)) + " not undetermined");
        c.expect(r->value_log == 0.0, std::string(criterion_name(r->id)) + " best value not exactly 0");
    }
    auto lq = direct_sum_lq(ws, 2.0, 2.0, 0, 64, kTol6);
    c.expect(lq.witnessed && lq.value_log == 0.0, "direct_sum_lq(2,2) not witnessed with flat trace");
    auto a2 = aag_cyclic(ws, 2.0, 1, RhoSpec::constant(1.0), 4096, kTol6);
    c.expect(a2.witnessed && detail(a2, "conclusion") == "cyclic", "alpha test at p=2 not cyclic");
    auto a1 = aag_cyclic(ws, 1.0, 1, RhoSpec::constant(1.0), 4096, kTol6);
    c.expect(a1.witnessed && detail(a1, "conclusion") == "non_cyclic" &&
                 detail(a1, "alpha_inv_linf_bounded") == "true",
             "alpha test at p=1 missing the l_inf membership obstruction");
    return c;
}

void check_transition(Check& c, const TransitionResult& r, double eps, const std::string& tag) {
    c.expect(r.found, tag + ": not found");
    if (!r.found) return;
    c.expect(r.perturbation_log == std::log(eps), tag + ": perturbation not exactly log eps");
    c.expect(r.residual_direct_log <= std::log(eps), tag + ": residual above eps");
    c.expect(r.residual_single_support, tag + ": residual support not a single index");
    c.expect(std::abs(r.residual_direct_log - r.residual_closedform_log) <= 1e-9,
             tag + ": two-way residual disagreement");
    c.expect(r.residual_direct_log <= r.bound_log + 1e-9, tag + ": residual above the search bound");
}

Check check_2() {
    Check c{"2", "constructive transition certificates on supexp(1), fixed case + 20 seeded"};
    auto ws = WeightSequence::supexp(1.0);
    check_transition(c, approximate_transition(ws, 1, 2, 0.1, 64, 64), 0.1, "k=1,n=2,eps=0.1");
    SplitMix64 rng(424242);
    for (int t = 0; t < 20; ++t) {
        long long k = rng.uniform_int(1, 5);
        long long n = rng.uniform_int(k + 1, 6);
        double eps = std::exp(rng.uniform(std::log(1e-3), std::log(0.5)));
        char tag[64];
        std::snprintf(tag, sizeof tag, "k=%lld,n=%lld,eps=%.4g", k, n, eps);
        check_transition(c, approximate_transition(ws, k, n, eps, 64, 64), eps, tag);
    }
    return c;
}

Check check_3a() {
    Check c{"3a", "flip-operator d_n closed form, m in 0..3, n in (m,32]"};
    bool rejected = false;
    try {
        WeightSequence::polydecay(1.0, 2.0, 0.5, 2);
    } catch (const std::invalid_argument&) {
        rejected = true;  // the n0=2 instance has w_{-4} = 0; n0=5 stands in
    }
    c.expect(rejected, "polydecay(1,2,0.5,2) should be rejected (zero weight at n=-4)");
    for (const auto& ws : identity_families()) {
        for (long long m = 0; m <= 3; ++m) {
            for (long long n = m + 1; n <= 32; ++n) {
                double a_n = ws.w_range_log(m + 1, m + n) - ws.w_range_log(m - n + 1, m);
                double rhs = -ws.w_range_log(m + 1, 2 * m) + ws.w_range_log(1, m) + a_n;
                // defining products of d_{n+m} (index > 0) and d_{m-n} (index < 0)
                long long t = n + m;
                double dplus = ws.w_range_log(1, t) - ws.w_range_log(2 * m + 1 - t, 2 * m);
                long long s = n - m;
                double dminus = ws.w_range_log(2 * m + 1, 2 * m + s) - ws.w_range_log(1 - s, 0);
                double scale = std::max(1.0, std::abs(rhs));
                if (std::abs(dplus - rhs) > 1e-12 * scale || std::abs(dminus - rhs) > 1e-12 * scale) {
                    c.expect(false, ws.label() + " m=" + std::to_string(m) + " n=" + std::to_string(n));
                    break;
                }
            }
        }
    }
    return c;
}

Check check_3b() {
    Check c{"3b", "intertwining relation on basis pairs, |k|,|n| <= 16"};
    for (const auto& ws : identity_families()) {
        for (long long m = 0; m <= 3; ++m) {
            auto jc = intertwiner_check(ws, m, 16);
            c.expect(jc.identity_residual <= 1e-12,
                     ws.label() + " m=" + std::to_string(m) + " residual " +
                         std::to_string(jc.identity_residual));
        }
    }
    return c;
}

Check check_3c() {
    Check c{"3c", "orbit functional F(T^n x, S^n f) vanishes, 50 seeded pairs, n <= 50"};
    SplitMix64 rng(777);
    for (const auto& ws : identity_families()) {
        for (int t = 0; t < 10; ++t) {
            SparseVector x = oracles::random_sparse(rng, 8, 5);
            SparseVector f = oracles::random_sparse(rng, 8, 5);
            double worst = adjoint_orbit_functional(ws, x, f, 50);
            c.expect(worst <= 1e-10, ws.label() + ": |F| = " + std::to_string(worst));
        }
    }
    return c;
}

Check check_3d() {
    Check c{"3d", "diagonal similarity of a phase-flipped family against its modulus family"};
    for (const auto& fam : identity_families()) {
        std::map<long long, cplx> we, ue;
        for (long long n = -40; n <= 40; ++n) {
            cplx w = fam.weight_at(n);
            if (n == 0) w = -w;  // phase flip at 0
            we[n] = w;
            ue[n] = std::abs(w);
        }
        auto w = WeightSequence::table(we, WeightSequence::TableTail::repeat_last(),
                                       WeightSequence::TableTail::repeat_last());
        auto u = WeightSequence::table(ue, WeightSequence::TableTail::repeat_last(),
                                       WeightSequence::TableTail::repeat_last());
        auto ds = diagonal_similarity(w, u, -32, 32);
        c.expect(ds.max_unit_modulus_err <= 1e-14, fam.label() + ": |d_n| off the circle");
        c.expect(ds.max_conjugation_err <= 1e-12, fam.label() + ": conjugation identity");
    }
    return c;
}

Check check_3e() {
    Check c{"3e", "direct-sum construction: Vandermonde determinant and display identity"};
    SplitMix64 rng(5150);
    for (const auto& ws : identity_families()) {
        for (long long j : {2LL, 3LL, 4LL, 8LL}) {
            auto d = direct_sum_cyclic_vector(ws, SparseVector::basis(0), j, 0);
            c.expect(d.det_rel_err <= 1e-10, ws.label() + " j=" + std::to_string(j) + ": det");
            c.expect(d.identity_max_rel_err <= 1e-12,
                     ws.label() + " j=" + std::to_string(j) + ": display identity");
            c.expect(d.vandermonde_ok, ws.label() + " j=" + std::to_string(j) + ": not ok");
        }
        auto dr = direct_sum_cyclic_vector(ws, oracles::random_sparse(rng, 4, 3), 4, 1);
        c.expect(dr.vandermonde_ok, ws.label() + " random x: not ok");
    }
    return c;
}

Check check_4() {
    Check c{"4", "w~ log products match direct products on 1000 seeded windows"};
    SplitMix64 rng(31337);
    auto fams = identity_families();
    int done = 0;
    while (done < 1000) {
        const auto& ws = fams[static_cast<std::size_t>(rng.uniform_int(0, 4))];
        long long a = rng.uniform_int(-64, 64);
        long long b = rng.uniform_int(a, 64);
        double lg = ws.w_tilde_log(a, b);
        if (std::abs(lg) > 600.0) continue;  // direct product leaves double range
        ++done;
        double direct = oracles::direct_product(ws, a, b);
        if (std::abs(std::exp(lg) - direct) > 1e-12 * direct) {
            c.expect(false, ws.label() + " [" + std::to_string(a) + "," + std::to_string(b) + "]");
            break;
        }
    }
    return c;
}

// max over m of min over n of the scan value: the budget-monotone value
// surface for the doubly quantified scans. (The report's witness value sits
// at the first witnessing n, which new m's can nudge within the tolerance
// band as the m horizon grows.)
double salas_deep_value(const WeightSequence& ws, long long m_max, long long n_max, bool ratio) {
    double worst = kLogZero;
    for (long long m = 0; m <= m_max; ++m) {
        double best = kLogInf;
        for (long long n = 1; n <= n_max; ++n) {
            double left = ws.w_tilde_log(m - n + 1, m);
            double right = -ws.w_tilde_log(m + 1, m + n);
            best = std::min(best, ratio ? left + right : std::max(left, right));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

Check check_5() {
    Check c{"5", "budget monotonicity on 100 seeded table families"};
    SplitMix64 rng(606060);
    auto run_all = [&](const WeightSequence& ws, long long mm, long long nm, long long jm) {
        std::vector<CriterionReport> v;
        v.push_back(salas_hypercyclic(ws, mm, nm, kTol3));
        v.push_back(salas_supercyclic(ws, mm, nm, kTol3));
        v.push_back(joint_inf_jm(ws, 1, jm, mm, kTol3));
        v.push_back(quasinilpotent(ws, nm, kTol3));
        v.push_back(fixed_j_ratio(ws, 1, 1, nm, kTol3));
        v.push_back(direct_sum_lq(ws, 2.0, 2.0, 0, nm, kTol3));
        v.push_back(sc_witness(ws, 1, nm, kTol3));
        return v;
    };
    for (int t = 0; t < 100; ++t) {
        auto tab = oracles::random_table(rng);
        auto small = run_all(tab, 12, 256, 12);
        auto big = run_all(tab, 24, 512, 24);
        for (std::size_t i = 0; i < small.size(); ++i) {
            if (!small[i].witnessed) continue;
            std::string name = criterion_name(small[i].id);
            if (!big[i].witnessed) {
                c.expect(false, name + " lost its witness, seed-index " + std::to_string(t));
                continue;
            }
            bool salas = i < 2;
            double vs = salas ? salas_deep_value(tab, 12, 256, i == 1) : small[i].value_log;
            double vb = salas ? salas_deep_value(tab, 24, 512, i == 1) : big[i].value_log;
            if (vb > vs + 1e-9)
                c.expect(false, name + " value grew, seed-index " + std::to_string(t));
        }
    }
    return c;
}

Check check_6() {
    Check c{"6", "classify output byte-identical with workers=1 and workers=8"};
    RunConfig cfg;
    cfg.command = "classify";
    cfg.family_inline = "beauzamy:1,2";
    cfg.p = 2.0;
    cfg.tol_linear = 1e-6;
    cfg.m_max = 16;
    cfg.n_max = 512;
    cfg.j_max = 16;
    auto ws = weights_from_config(cfg);
    cfg.workers = 1;
    std::string one = render_classify(cfg, ws);
    cfg.workers = 8;
    std::string eight = render_classify(cfg, ws);
    c.expect(one == eight, "outputs differ");
    RunConfig cfg2 = cfg;
    cfg2.family_inline = "supexp:1";
    auto ws2 = weights_from_config(cfg2);
    cfg2.workers = 1;
    std::string o2 = render_classify(cfg2, ws2);
    cfg2.workers = 8;
    std::string e2 = render_classify(cfg2, ws2);
    c.expect(o2 == e2, "supexp outputs differ");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    bool list = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
        if (std::strcmp(argv[i], "--list") == 0) list = true;
    }

    struct Entry {
        const char* id;
        Check (*fn)();
    };
    static const Entry entries[] = {
        {"1a", check_1a},
        {"1b", check_1b},
        {"1c", check_1c},
        {"1d-quasinilpotent", check_1d_quasinilpotent},
        {"1d-fixed-j", check_1d_fixed_j},
        {"1e", check_1e},
        {"2", check_2},
        {"3a", check_3a},
        {"3b", check_3b},
        {"3c", check_3c},
        {"3d", check_3d},
        {"3e", check_3e},
        {"4", check_4},
        {"5", check_5},
        {"6", check_6},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        if (list) {
            std::printf("%s\n", e.id);
            continue;
        }
        if (!only.empty() && only != e.id) continue;
        Check c = e.fn();
        std::printf("%s  %-18s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.desc.c_str(),
                    c.note.empty() ? "" : " — ", c.note.c_str());
        if (!c.pass) ++failures;
    }
    return failures;
}
