#pragma once

#include <cstdint>
#include <vector>

#include "wbs/operator_engine.hpp"

namespace wbs {

// f_n = c_n e_{-n}: the rescaled basis the shift translates forward
// (T f_n = f_{n+1}); c_0 = 1, c_n = w~(1-n, 0) for n > 0,
// c_n = w~(1, -n)^{-1} for n < 0, with full complex products.
struct FrameVector {
    long long n = 0;
    Amplitude c;
    SparseVector realization;  // c_n * e_{-n}
};

FrameVector frame_vector(const WeightSequence& ws, long long n);

// log |c_n| alone (prefix-sum query, no vector built).
double frame_c_log(const WeightSequence& ws, long long n);

// Deterministic grid search for (j, m) making the residual bound
//   j (log c_{-m} - log eps) + (j-1) upper(log ||T^n||) + log c_{(m-a)j}
// with a = n + k fall below log eps. The scan is lexicographic in (j, m)
// and returns the first feasible cell, which keeps every log magnitude in
// the certificate chain as small as the grid allows; the global minimizer
// sits at the far corner of the grid where the two-way residual
// verification would drown in rounding.
struct TransitionSearch {
    bool found = false;
    long long j = 0, m = 0;
    double bound_log = kLogInf;       // bound at (j, m) when found
    double best_bound_log = kLogInf;  // min bound over the whole grid
    long long best_j = 0, best_m = 0;
    double norm_upper_log = 0.0;      // certified upper bound used for ||T^n||
};
TransitionSearch search_transition(const WeightSequence& ws, long long k, long long n, double eps,
                                   long long j_max, long long m_max, int workers = 1);

// q_{j,m}(z) = -(C z^{m-n}/eps) * sum_{l=0}^{j-1} (C z^{m-k}/eps)^l with
// C = ||f_{-m}||: j terms at degrees (m-n) + l(m-k), coefficient
// log-magnitudes (l+1)(log C - log eps), all real negative.
LogPolynomial build_transition_poly(const WeightSequence& ws, long long j, long long m,
                                    long long k, long long n, double eps);

// Runs the approximate transition f_{-k} -> f_{-n}: for n <= k the exact
// monomial path (both residuals identically zero); for n > k the searched
// (j, m) construction with x_m = f_{-k} - (eps/||f_{-m}||) f_{-m}, verified
// two independent ways (direct functional calculus vs the closed-form
// telescoping identity).
struct TransitionResult {
    bool found = false;
    long long j = 0, m = 0;  // j = 0 marks the exact monomial path
    double eps = 0.0;
    LogPolynomial poly;
    SparseVector u;
    double perturbation_log = kLogZero;        // log ||u - f_{-k}||
    double residual_direct_log = kLogZero;     // log ||q(T)u - f_{-n}||
    double residual_closedform_log = kLogZero; // j(log C - log eps) + log c_{(m-k)j-n}
    double bound_log = kLogZero;               // accepted search bound
    bool residual_single_support = true;
    long long residual_index = 0;              // e-index of the residual spike
    // when not found
    double best_bound_log = kLogInf;
    long long best_j = 0, best_m = 0;
};
TransitionResult approximate_transition(const WeightSequence& ws, long long k, long long n,
                                        double eps, long long j_max, long long m_max,
                                        double p = 2.0, int workers = 1);

// Direct-sum cyclic-vector data for S = T + zT + ... + z^{j-1}T with
// z = e^{2 pi i / j}: u = (x, ..., x), plus three verifications:
//   (i)  |det {z^{kl}}| matches prod_{k<l} |z^l - z^k| (LU elimination),
//   (ii) S^t r(S^j) u = (T^t r(T^j) x, z^t ..., z^{t(j-1)} ...) on sampled
//        polynomials r (monomials plus seeded random coefficient vectors),
//   (iii) solving the power matrix reconstructs each coordinate projection
//        from the sampled diagonal tuples.
struct DirectSumCheck {
    std::vector<SparseVector> u;
    cplx z{1.0, 0.0};
    bool vandermonde_ok = false;
    double det_rel_err = 0.0;
    double identity_max_rel_err = 0.0;
    double reconstruct_max_err = 0.0;
};
DirectSumCheck direct_sum_cyclic_vector(const WeightSequence& ws, const SparseVector& x,
                                        long long j, std::uint64_t seed = 0);

}  // namespace wbs
