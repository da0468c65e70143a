#pragma once

#include <map>
#include <string>
#include <vector>

#include "wbs/log_arith.hpp"
#include "wbs/weights.hpp"

namespace wbs {

// Finitely supported vector over Z with (phase, log-magnitude) amplitudes.
// Zero amplitudes are never stored. Immutable-value usage: operations return
// fresh vectors.
struct SparseVector {
    std::map<long long, Amplitude> entries;

    static SparseVector zero() { return {}; }
    static SparseVector basis(long long n) {
        SparseVector v;
        v.entries.emplace(n, Amplitude::one());
        return v;
    }

    void set(long long n, const Amplitude& a) {
        if (!a.is_zero()) entries[n] = a;
    }

    bool is_zero() const { return entries.empty(); }
};

// One-variable polynomial with (phase, log-magnitude) coefficients at
// non-negative degrees; zero coefficients are not stored.
struct LogPolynomial {
    std::map<long long, Amplitude> coeffs;

    static LogPolynomial zero() { return {}; }
    static LogPolynomial monomial(long long deg, const Amplitude& c) {
        LogPolynomial r;
        r.set(deg, c);
        return r;
    }

    long long degree() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first; }

    void set(long long deg, const Amplitude& c);  // rejects deg < 0
};

// T^d with T e_n = w_n e_{n-1}: e_k -> (prod_{i=k-d+1}^{k} w_i) e_{k-d}.
SparseVector apply_shift_power(const WeightSequence& ws, const SparseVector& v, long long d);

// S^d with S e_n = w_{n+1} e_{n+1}: e_k -> (prod_{i=k+1}^{k+d} w_i) e_{k+d}.
SparseVector apply_dual_shift_power(const WeightSequence& ws, const SparseVector& v, long long d);

// r(T) v = sum_d coeff_d T^d v, colliding amplitudes accumulated at a common
// log anchor.
SparseVector apply_polynomial(const WeightSequence& ws, const LogPolynomial& r,
                              const SparseVector& v);

// r(T) v - y in a single accumulation, so that cancellations between the
// polynomial image and the target collapse structurally.
SparseVector apply_polynomial_minus(const WeightSequence& ws, const LogPolynomial& r,
                                    const SparseVector& v, const SparseVector& y);

SparseVector add(const SparseVector& a, const SparseVector& b);
SparseVector subtract(const SparseVector& a, const SparseVector& b);
SparseVector scale(const SparseVector& v, const Amplitude& c);

// Exact finite-support l_p norm in log domain; p = inf uses the sup.
double lp_norm_log(const SparseVector& v, double p);

// Finite bilinear pairing <f, x> = sum_n f_n x_n (functional application).
Amplitude bilinear_pairing(const SparseVector& f, const SparseVector& x);

// max over common/colliding indices of amplitude_rel_diff; 0 for disjoint
// equality checks with both sides zero.
double max_rel_entry_diff(const SparseVector& a, const SparseVector& b);

// Diagonal conjugation data between two shifts of equal weight moduli:
// d_0 = 1, d_n = prod_{1..n} w_j/u_j for n >= 1, d_n = prod_{n+1..0} u_j/w_j
// for n < 0. Throws on a modulus mismatch inside the window.
struct DiagonalSimilarity {
    long long lo = 0;
    std::vector<cplx> d;  // d[i] = d_{lo + i}
    double max_unit_modulus_err = 0.0;  // max | |d_n| - 1 |
    double max_conjugation_err = 0.0;   // max rel err of w_n = u_n d_n / d_{n-1}
};
DiagonalSimilarity diagonal_similarity(const WeightSequence& w, const WeightSequence& u,
                                       long long lo, long long hi);

// The flip operator J e_n = d_n e_{2m-n} with d_0 = 1,
// d_n = prod_{j=1}^{n} w_j / w_{2m+1-j} (n > 0),
// d_n = prod_{j=1}^{|n|} w_{2m+j} / w_{1-j} (n < 0),
// checked on the window [-N, 2m+N] against
//   (a) the closed form |d_{n+m}| = |d_{m-n}| = w~(m+1,2m)^{-1} w~(1,m) a_n
//       for n in (m, N], with a_n = w~(m+1,m+n)/w~(m-n+1,m), and
//   (b) the intertwining relation S(J e_n) = J(T e_n) on every basis vector.
struct IntertwinerCheck {
    long long m = 0;
    long long lo = 0;
    std::vector<Amplitude> d;  // d[i] = d_{lo + i}
    double identity_residual = 0.0;  // max over checks (a) and (b)
};
IntertwinerCheck intertwiner_check(const WeightSequence& ws, long long m, long long half_width);

// max over n in [0, n_max] of the relative magnitude of
// F(T^n x, S^n f) = <f, T^n x> - <S^n f, x>, which vanishes identically.
double adjoint_orbit_functional(const WeightSequence& ws, const SparseVector& x,
                                const SparseVector& f, long long n_max);

// SparseVector JSON: {"entries":[[n,re,im],...]} with amplitudes materialized
// when every |log_mag| <= 600, else {"entries_log":[[n,phase_re,phase_im,log_mag],...]}.
std::string sparse_vector_json(const SparseVector& v);
SparseVector sparse_vector_from_json_text(const std::string& text);

}  // namespace wbs
