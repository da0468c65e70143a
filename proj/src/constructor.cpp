#include "wbs/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wbs/parallel.hpp"
#include "wbs/rng.hpp"

namespace wbs {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

FrameVector frame_vector(const WeightSequence& ws, long long n) {
    FrameVector f;
    f.n = n;
    if (n == 0)
        f.c = Amplitude::one();
    else if (n > 0)
        f.c = ws.range_amplitude(1 - n, 0);
    else
        f.c = ws.range_amplitude(1, -n).inverse();
    f.realization.set(-n, f.c);
    return f;
}

double frame_c_log(const WeightSequence& ws, long long n) {
    if (n == 0) return 0.0;
    if (n > 0) return ws.w_tilde_log(1 - n, 0);
    return -ws.w_tilde_log(1, -n);
}

TransitionSearch search_transition(const WeightSequence& ws, long long k, long long n, double eps,
                                   long long j_max, long long m_max, int workers) {
    require(n > k && k >= 1, "search_transition: requires n > k >= 1");
    require(eps > 0.0, "search_transition: requires eps > 0");
    require(j_max >= 1 && j_max <= 4096, "search_transition: j_max out of range");
    require(m_max >= 1 && m_max <= 4096, "search_transition: m_max out of range");
    long long a = n + k;
    double log_eps = std::log(eps);

    // certified ||T^n|| upper bound over a window clearing both tail onsets
    long long span = std::max({std::llabs(ws.left_tail().thresh), std::llabs(ws.right_tail().thresh),
                               static_cast<long long>(64)}) + n + 1;
    double upper = ws.shift_power_norm_log(n, -span, span).upper;
    ws.ensure_range(-std::max((m_max - a) * j_max, m_max) - 1, m_max + 1);

    struct Local {
        bool found = false;
        long long j = 0, m = 0;
        double bound = kLogInf;
        double best = kLogInf;
        long long bj = 0, bm = 0;
    };
    auto blocks = run_blocks<Local>(j_max, workers, [&](long long lo, long long hi) {
        Local L;
        for (long long j = lo + 1; j <= hi && !L.found; ++j) {
            for (long long m = a; m <= m_max; ++m) {
                double logC = frame_c_log(ws, -m);
                double bound = static_cast<double>(j) * (logC - log_eps) +
                               static_cast<double>(j - 1) * upper + frame_c_log(ws, (m - a) * j);
                if (bound < L.best) {
                    L.best = bound;
                    L.bj = j;
                    L.bm = m;
                }
                if (bound <= log_eps) {
                    L.found = true;
                    L.j = j;
                    L.m = m;
                    L.bound = bound;
                    break;
                }
            }
        }
        return L;
    });

    TransitionSearch out;
    out.norm_upper_log = upper;
    for (const Local& L : blocks) {
        if (L.best < out.best_bound_log) {
            out.best_bound_log = L.best;
            out.best_j = L.bj;
            out.best_m = L.bm;
        }
        if (L.found && !out.found) {  // blocks are in ascending-j order
            out.found = true;
            out.j = L.j;
            out.m = L.m;
            out.bound_log = L.bound;
        }
    }
    return out;
}

LogPolynomial build_transition_poly(const WeightSequence& ws, long long j, long long m,
                                    long long k, long long n, double eps) {
    require(j >= 1, "build_transition_poly: requires j >= 1");
    require(m >= n && n > k && k >= 1, "build_transition_poly: requires m >= n > k >= 1");
    require(eps > 0.0, "build_transition_poly: requires eps > 0");
    double delta = frame_c_log(ws, -m) - std::log(eps);  // log(C/eps)
    LogPolynomial q;
    for (long long l = 0; l < j; ++l) {
        long long deg = (m - n) + l * (m - k);
        q.set(deg, Amplitude::from_log(cplx(-1.0, 0.0), static_cast<double>(l + 1) * delta));
    }
    return q;
}

TransitionResult approximate_transition(const WeightSequence& ws, long long k, long long n,
                                        double eps, long long j_max, long long m_max, double p,
                                        int workers) {
    require(k >= 1 && n >= 1, "approximate_transition: requires k, n >= 1");
    require(eps > 0.0, "approximate_transition: requires eps > 0");

    TransitionResult out;
    out.eps = eps;
    FrameVector fk = frame_vector(ws, -k);
    FrameVector fn = frame_vector(ws, -n);

    if (n <= k) {
        // exact monomial path: T^{k-n} f_{-k} = f_{-n}, so r(z) = c z^{k-n}
        // with c the connecting-weight ratio (identically 1 up to rounding)
        Amplitude conn = ws.range_amplitude(n + 1, k);  // empty when n == k
        Amplitude c = fn.c * (fk.c * conn).inverse();
        out.found = true;
        out.j = 0;
        out.m = 0;
        out.poly = LogPolynomial::monomial(k - n, c);
        out.u = fk.realization;
        out.perturbation_log = kLogZero;
        SparseVector resid = apply_polynomial_minus(ws, out.poly, out.u, fn.realization);
        out.residual_direct_log = lp_norm_log(resid, p);
        out.residual_closedform_log = kLogZero;
        out.residual_single_support = resid.entries.empty();
        out.residual_index = 0;
        out.bound_log = kLogZero;
        return out;
    }

    TransitionSearch s = search_transition(ws, k, n, eps, j_max, m_max, workers);
    out.best_bound_log = s.best_bound_log;
    out.best_j = s.best_j;
    out.best_m = s.best_m;
    if (!s.found) return out;

    long long j = s.j, m = s.m;
    out.found = true;
    out.j = j;
    out.m = m;
    out.bound_log = s.bound_log;
    out.poly = build_transition_poly(ws, j, m, k, n, eps);

    // x_m = f_{-k} - (eps/||f_{-m}||) f_{-m}: the e_m entry carries magnitude
    // exactly eps and the phase of c_{-m}, negated
    FrameVector fm = frame_vector(ws, -m);
    out.u = fk.realization;
    out.u.set(m, Amplitude::from_log(-fm.c.phase, std::log(eps)));

    out.perturbation_log = lp_norm_log(subtract(out.u, fk.realization), p);

    SparseVector resid = apply_polynomial_minus(ws, out.poly, out.u, fn.realization);
    out.residual_direct_log = lp_norm_log(resid, p);
    double delta = frame_c_log(ws, -m) - std::log(eps);
    out.residual_closedform_log = static_cast<double>(j) * delta + frame_c_log(ws, (m - k) * j - n);
    out.residual_index = n - (m - k) * j;
    out.residual_single_support =
        resid.entries.size() == 1 && resid.entries.begin()->first == out.residual_index;
    return out;
}

// ---------------------------------------------------------------------------
// direct-sum cyclic vector

namespace {

// |det| of a small complex matrix by Gaussian elimination, partial pivoting.
double abs_det(std::vector<std::vector<cplx>> a) {
    std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) == 0.0) return 0.0;
        std::swap(a[c], a[piv]);
        det *= std::abs(a[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            cplx f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

// solve A x = b by Gaussian elimination
std::vector<cplx> solve(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            cplx f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
            b[r] -= f * b[c];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t r = n; r-- > 0;) {
        cplx s = b[r];
        for (std::size_t cc = r + 1; cc < n; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return x;
}

// z^e by repeated multiplication: keeps the accumulated drift the identity
// checks are meant to exercise, instead of reducing the angle analytically.
cplx z_pow(cplx z, long long e) {
    cplx r(1.0, 0.0);
    for (long long i = 0; i < e; ++i) r *= z;
    return r;
}

}  // namespace

DirectSumCheck direct_sum_cyclic_vector(const WeightSequence& ws, const SparseVector& x,
                                        long long j, std::uint64_t seed) {
    require(j >= 1 && j <= 64, "direct_sum_cyclic_vector: requires 1 <= j <= 64");
    DirectSumCheck out;
    out.z = j == 1 ? cplx(1.0, 0.0) : std::polar(1.0, 2.0 * M_PI / static_cast<double>(j));
    out.u.assign(static_cast<std::size_t>(j), x);

    // (i) Vandermonde determinant of {z^{kl}} vs the pair-distance product
    std::vector<std::vector<cplx>> V(static_cast<std::size_t>(j),
                                     std::vector<cplx>(static_cast<std::size_t>(j)));
    std::vector<cplx> zp(static_cast<std::size_t>(j));
    for (long long t = 0; t < j; ++t) zp[static_cast<std::size_t>(t)] = z_pow(out.z, t);
    for (long long r = 0; r < j; ++r)
        for (long long c = 0; c < j; ++c)
            V[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = z_pow(out.z, r * c);
    double det = abs_det(V);
    double prod = 1.0;
    for (long long kk = 0; kk < j; ++kk)
        for (long long l = kk + 1; l < j; ++l)
            prod *= std::abs(zp[static_cast<std::size_t>(l)] - zp[static_cast<std::size_t>(kk)]);
    out.det_rel_err = prod == 0.0 ? (det == 0.0 ? 0.0 : 1.0) : std::abs(det - prod) / prod;

    // (ii) S^t r(S^j) u display identity on sampled polynomials
    std::vector<LogPolynomial> samples;
    for (long long t = 0; t <= std::min<long long>(8, 2 * j); ++t)
        samples.push_back(LogPolynomial::monomial(t, Amplitude::one()));
    SplitMix64 rng(seed ^ 0x5cb1ce5ddeadULL);
    for (int s = 0; s < 4; ++s) {
        LogPolynomial r;
        long long dmax = rng.uniform_int(1, 4);
        for (long long d = 0; d <= dmax; ++d)
            r.set(d, Amplitude::from_complex(cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))));
        samples.push_back(r);
    }
    double worst = 0.0;
    for (const LogPolynomial& r : samples) {
        // r(T^j) x once; components differ only by phases
        LogPolynomial r_up;
        for (const auto& [d, cf] : r.coeffs) r_up.set(d * j, cf);
        SparseVector base = apply_polynomial(ws, r_up, x);
        for (long long t = 0; t < j; ++t) {
            SparseVector rhs_core = apply_shift_power(ws, base, t);
            for (long long i = 0; i < j; ++i) {
                // lhs: component i of S^t r(S^j) u evaluated literally
                LogPolynomial ri;
                for (const auto& [d, cf] : r.coeffs)
                    ri.set(d * j, cf * Amplitude::from_complex(z_pow(out.z, i * j * d)));
                SparseVector lhs = apply_shift_power(ws, apply_polynomial(ws, ri, x), t);
                lhs = scale(lhs, Amplitude::from_complex(z_pow(out.z, i * t)));
                SparseVector rhs = scale(rhs_core, Amplitude::from_complex(z_pow(out.z, t * i)));
                worst = std::max(worst, max_rel_entry_diff(lhs, rhs));
            }
        }
    }
    out.identity_max_rel_err = worst;

    // (iii) Vandermonde solve reconstructs the coordinate projections from
    // the diagonal tuples N_t = (a, z^t a, ..., z^{t(j-1)} a)
    double rec = 0.0;
    for (long long l0 = 0; l0 < j; ++l0) {
        std::vector<std::vector<cplx>> A(static_cast<std::size_t>(j),
                                         std::vector<cplx>(static_cast<std::size_t>(j)));
        std::vector<cplx> b(static_cast<std::size_t>(j), cplx(0.0, 0.0));
        for (long long l = 0; l < j; ++l) {
            for (long long t = 0; t < j; ++t)
                A[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)] = z_pow(out.z, t * l);
            b[static_cast<std::size_t>(l)] = l == l0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        }
        std::vector<cplx> gamma = solve(A, b);
        for (long long l = 0; l < j; ++l) {
            cplx got(0.0, 0.0);
            for (long long t = 0; t < j; ++t)
                got += gamma[static_cast<std::size_t>(t)] * z_pow(out.z, t * l);
            cplx want = l == l0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            rec = std::max(rec, std::abs(got - want));
        }
    }
    out.reconstruct_max_err = rec;

    out.vandermonde_ok =
        out.det_rel_err <= 1e-10 && out.identity_max_rel_err <= 1e-12 && out.reconstruct_max_err <= 1e-10;
    return out;
}

}  // namespace wbs
