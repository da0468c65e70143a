#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "wbs/operator_engine.hpp"

using namespace wbs;

namespace {

Amplitude entry(const SparseVector& v, long long n) {
    auto it = v.entries.find(n);
    return it == v.entries.end() ? Amplitude::zero() : it->second;
}

}  // namespace

TEST_CASE("shift powers on basis vectors") {
    auto c1 = WeightSequence::constant(1.0);
    auto b = WeightSequence::beauzamy(2.0, 1.0);

    SparseVector e0 = SparseVector::basis(0);
    SparseVector r = apply_shift_power(c1, e0, 3);
    REQUIRE(r.entries.size() == 1);
    CHECK(amplitude_rel_diff(entry(r, -3), Amplitude::one()) <= 1e-15);

    SparseVector r2 = apply_shift_power(b, SparseVector::basis(1), 2);
    REQUIRE(r2.entries.size() == 1);
    CHECK(entry(r2, -1).log_mag == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    CHECK(apply_shift_power(b, SparseVector::zero(), 5).is_zero());
}

TEST_CASE("dual shift powers") {
    auto c1 = WeightSequence::constant(1.0);
    auto b = WeightSequence::beauzamy(2.0, 1.0);
    auto se = WeightSequence::supexp(1.0);

    CHECK(entry(apply_dual_shift_power(c1, SparseVector::basis(0), 2), 2).log_mag == 0.0);
    CHECK(entry(apply_dual_shift_power(b, SparseVector::basis(-2), 2), 0).log_mag ==
          doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(entry(apply_dual_shift_power(se, SparseVector::basis(0), 1), 1).log_mag ==
          doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("polynomial application") {
    auto c1 = WeightSequence::constant(1.0);
    auto b = WeightSequence::beauzamy(2.0, 1.0);
    SparseVector e0 = SparseVector::basis(0);

    LogPolynomial z2 = LogPolynomial::monomial(2, Amplitude::one());
    SparseVector r = apply_polynomial(c1, z2, e0);
    REQUIRE(r.entries.size() == 1);
    CHECK(!entry(r, -2).is_zero());

    LogPolynomial onepz;
    onepz.set(0, Amplitude::one());
    onepz.set(1, Amplitude::one());
    SparseVector r2 = apply_polynomial(b, onepz, e0);
    REQUIRE(r2.entries.size() == 2);
    CHECK(entry(r2, 0).log_mag == 0.0);
    CHECK(entry(r2, -1).log_mag == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    CHECK(apply_polynomial(b, LogPolynomial::zero(), e0).is_zero());

    LogPolynomial neg;
    CHECK_THROWS_AS(neg.set(-1, Amplitude::one()), std::invalid_argument);
}

TEST_CASE("polynomial linearity and shift semigroup") {
    auto se = WeightSequence::supexp(0.5);
    SplitMix64 rng(21);
    for (int t = 0; t < 30; ++t) {
        SparseVector v = oracles::random_sparse(rng, 6, 4);
        LogPolynomial r, s, rs;
        for (long long d = 0; d <= 3; ++d) {
            Amplitude a = Amplitude::from_complex({rng.uniform(-1, 1), rng.uniform(-1, 1)});
            Amplitude bb = Amplitude::from_complex({rng.uniform(-1, 1), rng.uniform(-1, 1)});
            r.set(d, a);
            s.set(d, bb);
        }
        for (long long d = 0; d <= 3; ++d) {
            std::vector<Contribution> cs;
            Amplitude ra = r.coeffs.count(d) ? r.coeffs[d] : Amplitude::zero();
            Amplitude sa = s.coeffs.count(d) ? s.coeffs[d] : Amplitude::zero();
            cs.push_back({ra.phase, ra.log_mag});
            cs.push_back({sa.phase, sa.log_mag});
            rs.set(d, accumulate_amplitudes(cs, 1e-15));
        }
        SparseVector lhs = apply_polynomial(se, rs, v);
        SparseVector rhs = add(apply_polynomial(se, r, v), apply_polynomial(se, s, v));
        CHECK(max_rel_entry_diff(lhs, rhs) <= 1e-12);

        long long d1 = rng.uniform_int(0, 4), d2 = rng.uniform_int(0, 4);
        SparseVector a = apply_shift_power(se, apply_shift_power(se, v, d1), d2);
        SparseVector bb = apply_shift_power(se, v, d1 + d2);
        CHECK(max_rel_entry_diff(a, bb) <= 1e-12);
    }
}

TEST_CASE("lp norms") {
    SparseVector e5 = SparseVector::basis(5);
    CHECK(lp_norm_log(e5, 1.0) == 0.0);
    CHECK(lp_norm_log(e5, 2.0) == 0.0);
    CHECK(lp_norm_log(e5, std::numeric_limits<double>::infinity()) == 0.0);

    SparseVector v = SparseVector::basis(0);
    v.set(1, Amplitude::one());
    CHECK(lp_norm_log(v, 2.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(lp_norm_log(v, std::numeric_limits<double>::infinity()) == 0.0);

    CHECK(lp_norm_log(SparseVector::zero(), 2.0) == kLogZero);
    CHECK_THROWS_AS(lp_norm_log(v, 0.5), std::invalid_argument);

    // homogeneity
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        SparseVector w = oracles::random_sparse(rng, 8, 5);
        Amplitude c = Amplitude::from_log({0.6, 0.8}, rng.uniform(-300.0, 300.0));
        double lhs = lp_norm_log(scale(w, c), 1.5);
        double rhs = c.log_mag + lp_norm_log(w, 1.5);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("duality identity via the orbit functional") {
    auto se = WeightSequence::supexp(1.0);
    CHECK(adjoint_orbit_functional(se, SparseVector::basis(0), SparseVector::basis(0), 50) <= 1e-10);
    CHECK(adjoint_orbit_functional(se, SparseVector::zero(), SparseVector::basis(2), 10) == 0.0);
    SplitMix64 rng(17);
    for (int t = 0; t < 20; ++t) {
        SparseVector x = oracles::random_sparse(rng, 8, 5);
        SparseVector f = oracles::random_sparse(rng, 8, 5);
        CHECK(adjoint_orbit_functional(se, x, f, 50) <= 1e-10);
    }
}

TEST_CASE("diagonal similarity") {
    auto b = WeightSequence::beauzamy(2.0, 1.0);
    auto same = diagonal_similarity(b, b, -16, 16);
    for (const cplx& d : same.d) CHECK(std::abs(d - cplx(1.0, 0.0)) <= 1e-14);

    // phase flip at n = 0 against the modulus family
    std::map<long long, cplx> we{{0, -1.0}};
    auto w = WeightSequence::table(we, WeightSequence::TableTail::constant(1.0),
                                   WeightSequence::TableTail::constant(1.0));
    auto u = WeightSequence::constant(1.0);
    auto ds = diagonal_similarity(w, u, -16, 16);
    CHECK(ds.max_unit_modulus_err <= 1e-14);
    CHECK(ds.max_conjugation_err <= 1e-12);
    // the sign flip at 0 makes d_n = -1 on the negative side, +1 elsewhere
    for (long long n = -16; n <= 16; ++n) {
        cplx d = ds.d[static_cast<std::size_t>(n - ds.lo)];
        CHECK(std::abs(d - cplx(n < 0 ? -1.0 : 1.0, 0.0)) <= 1e-14);
    }

    auto mism = WeightSequence::constant(3.0);
    CHECK_THROWS_WITH_AS(diagonal_similarity(w, mism, -4, 4), doctest::Contains("mismatch"),
                         std::invalid_argument);
}

TEST_CASE("intertwiner flip operator") {
    auto c1 = WeightSequence::constant(1.0);
    auto j0 = intertwiner_check(c1, 0, 8);
    CHECK(j0.identity_residual <= 1e-15);
    for (const Amplitude& d : j0.d) CHECK(amplitude_rel_diff(d, Amplitude::one()) <= 1e-14);

    auto b = WeightSequence::beauzamy(2.0, 1.0);
    auto jb = intertwiner_check(b, 0, 8);
    CHECK(jb.identity_residual <= 1e-12);
    // d_n = 2^{-n} for n > 0
    for (long long n = 1; n <= 8; ++n) {
        Amplitude d = jb.d[static_cast<std::size_t>(n - jb.lo)];
        CHECK(d.log_mag ==
              doctest::Approx(-static_cast<double>(n) * std::log(2.0)).epsilon(1e-13));
    }

    auto se = WeightSequence::supexp(1.0);
    CHECK(intertwiner_check(se, 1, 8).identity_residual <= 1e-12);
}

TEST_CASE("sparse vector JSON forms") {
    SparseVector v;
    v.set(-2, Amplitude::from_complex({0.5, 0.25}));
    v.set(3, Amplitude::from_complex({-1.0, 0.0}));
    std::string js = sparse_vector_json(v);
    CHECK(js.find("\"entries\"") != std::string::npos);
    SparseVector back = sparse_vector_from_json_text(js);
    CHECK(max_rel_entry_diff(v, back) <= 1e-12);

    SparseVector big;
    big.set(0, Amplitude::from_log({1.0, 0.0}, 700.0));
    std::string js2 = sparse_vector_json(big);
    CHECK(js2.find("\"entries_log\"") != std::string::npos);
    SparseVector back2 = sparse_vector_from_json_text(js2);
    CHECK(max_rel_entry_diff(big, back2) <= 1e-12);

    CHECK_THROWS_AS(sparse_vector_from_json_text("{}"), std::invalid_argument);
}
