#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace wbs {

using cplx = std::complex<double>;

// Log-domain magnitude: natural log of a non-negative number.
// -inf encodes magnitude zero; adding LogMags multiplies magnitudes.
using LogMag = double;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr double kLogInf = std::numeric_limits<double>::infinity();

inline bool log_is_zero(double x) { return std::isinf(x) && x < 0.0; }

// Stable log(sum_i exp(logs[i])). Empty input is log(0).
inline double log_sum_exp(const std::vector<double>& logs) {
    double anchor = kLogZero;
    for (double l : logs)
        if (l > anchor) anchor = l;
    if (log_is_zero(anchor)) return kLogZero;
    double s = 0.0;
    for (double l : logs) s += std::exp(l - anchor);
    return anchor + std::log(s);
}

// Amplitude in (phase, log-magnitude) form. The phase stays on the unit
// circle; zero is encoded by log_mag == -inf.
struct Amplitude {
    cplx phase{1.0, 0.0};
    double log_mag = kLogZero;

    static Amplitude zero() { return {}; }
    static Amplitude one() { return {cplx(1.0, 0.0), 0.0}; }

    static Amplitude from_log(cplx ph, double lm) {
        if (log_is_zero(lm)) return zero();
        double a = std::abs(ph);
        return {a > 0.0 ? ph / a : cplx(1.0, 0.0), lm};
    }

    static Amplitude from_complex(cplx z) {
        double a = std::abs(z);
        if (a == 0.0) return zero();
        return {z / a, std::log(a)};
    }

    bool is_zero() const { return log_is_zero(log_mag); }

    cplx to_complex() const {
        return is_zero() ? cplx(0.0, 0.0) : phase * std::exp(log_mag);
    }

    Amplitude operator*(const Amplitude& o) const {
        if (is_zero() || o.is_zero()) return zero();
        cplx p = phase * o.phase;
        double a = std::abs(p);
        return {a > 0.0 ? p / a : cplx(1.0, 0.0), log_mag + o.log_mag};
    }

    Amplitude inverse() const {
        if (is_zero()) return zero();  // callers guard; 1/0 has no home here
        return {std::conj(phase), -log_mag};
    }

    Amplitude negated() const {
        if (is_zero()) return zero();
        return {-phase, log_mag};
    }

    Amplitude scaled(double dlog) const {
        if (is_zero()) return zero();
        return {phase, log_mag + dlog};
    }
};

// |a - b| relative to max(|a|, |b|), evaluated without leaving the log
// domain, so it is meaningful for amplitudes far outside double range.
inline double amplitude_rel_diff(const Amplitude& a, const Amplitude& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return 1.0;
    double ref = std::max(a.log_mag, b.log_mag);
    cplx da = a.phase * std::exp(a.log_mag - ref);
    cplx db = b.phase * std::exp(b.log_mag - ref);
    return std::abs(da - db) / std::max(std::abs(da), std::abs(db));
}

// Neumaier compensated running sum; the represented value is hi + lo.
struct CompensatedSum {
    double hi = 0.0;
    double lo = 0.0;

    void add(double x) {
        double t = hi + x;
        if (std::abs(hi) >= std::abs(x))
            lo += (hi - t) + x;
        else
            lo += (x - t) + hi;
        hi = t;
    }

    double value() const { return hi + lo; }
};

// Compensated prefix value: (hi, lo) pair with optional sign flip applied.
struct PrefixPair {
    double hi = 0.0;
    double lo = 0.0;
};

// b - a carrying the compensation terms; accurate to ~ulp(result) even when
// |a|, |b| are many orders of magnitude larger than the difference.
inline double prefix_diff(const PrefixPair& b, const PrefixPair& a) {
    return (b.hi - a.hi) + (b.lo - a.lo);
}

struct Contribution {
    cplx phase;
    double log_mag;
};

// Sums contributions landing on one index. Anchors at the max log-magnitude
// and flushes |sum| <= flush_abs to exact zero so that designed telescoping
// cancellations collapse structurally instead of leaving rounding residue.
inline Amplitude accumulate_amplitudes(const std::vector<Contribution>& cs,
                                       double flush_abs) {
    double anchor = kLogZero;
    for (const auto& c : cs)
        if (c.log_mag > anchor) anchor = c.log_mag;
    if (log_is_zero(anchor)) return Amplitude::zero();
    cplx s(0.0, 0.0);
    for (const auto& c : cs) {
        if (log_is_zero(c.log_mag)) continue;
        s += c.phase * std::exp(c.log_mag - anchor);
    }
    double mag = std::abs(s);
    if (mag <= flush_abs) return Amplitude::zero();
    return Amplitude{s / mag, anchor + std::log(mag)};
}

// Flush threshold for an accumulation whose intermediate log-chains reach
// magnitude `opscale`: rounding of the chained log sums scales with the
// operand magnitudes, not with the anchored result.
inline double flush_threshold(double opscale) {
    return std::max(1e-15, 1e-13 * std::max(1.0, opscale));
}

}  // namespace wbs
