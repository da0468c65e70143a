#pragma once

#include <map>
#include <memory>
#include <string>

#include "wbs/log_arith.hpp"

namespace wbs {

// (lower, upper) log bounds on the operator norm of a shift power.
struct NormBoundsLog {
    double lower = kLogZero;
    double upper = kLogZero;
};

// Per-side tail description of |w_n|.
//   right side: |w| is monotone on [thresh, +inf)
//   left side:  |w| is monotone on (-inf, thresh]
// limit_log is log of lim |w_n| toward that infinity (-inf for a zero limit).
struct TailInfoSide {
    bool monotone = false;
    long long thresh = 0;
    double limit_log = kLogZero;
};

// Bounded nonvanishing bilateral weight sequence w : Z -> C, given as a
// closed-form family or an explicit table with tail rules. All range-product
// queries go through a lazily grown compensated prefix-sum cache, so repeated
// queries are O(1) and bit-stable regardless of growth history or thread
// interleaving. Value type; copies share the immutable family and the cache.
class WeightSequence {
  public:
    struct TableTail {
        enum Kind { kNone, kConstant, kRepeatLast } kind = kNone;
        cplx c{0.0, 0.0};

        static TableTail none() { return {}; }
        static TableTail constant(cplx v) { return {kConstant, v}; }
        static TableTail repeat_last() { return {kRepeatLast, {}}; }
    };

    // w_n = c
    static WeightSequence constant(cplx c);
    // w_n = a for n <= 0, w_n = b for n > 0
    static WeightSequence beauzamy(cplx a, cplx b);
    // w_n = 1 - a*n^(-alpha) for n >= n0, w_n = 1 - b*(-n)^(-alpha) for
    // n <= -n0, w_n = 1 in between. Exact zeros are rejected.
    static WeightSequence polydecay(double a, double b, double alpha, long long n0 = 2);
    // w_n = exp(-gamma*|n|), gamma >= 0
    static WeightSequence supexp(double gamma);
    // explicit contiguous window plus tail rules
    static WeightSequence table(const std::map<long long, cplx>& entries,
                                TableTail left, TableTail right);

    // Parses the weight-spec JSON format; throws std::invalid_argument with
    // the offending field named.
    static WeightSequence from_json_text(const std::string& text);

    cplx weight_at(long long n) const;
    double log_abs_at(long long n) const;

    // sum_{j=a}^{b} log|w_j|; requires a <= b.
    double w_tilde_log(long long a, long long b) const;
    // Same, but a == b + 1 is the empty product (0). Internal conveniences
    // like w~(m+1, 2m) at m = 0 need this.
    double w_range_log(long long a, long long b) const;

    // prod_{j=a}^{b} phase(w_j), unit modulus; empty range allowed.
    cplx phase_range(long long a, long long b) const;
    // Full complex product over [a, b] as an amplitude; empty range allowed.
    Amplitude range_amplitude(long long a, long long b) const;

    // alpha_0 = 1, alpha_n = w~(1,n)^{-1} for n > 0, alpha_n = w~(1+n, 0)
    // for n < 0; returned as log.
    double alpha_log(long long n) const;

    // lower = max over k in [win_lo, win_hi] of w~(k-n+1, k).
    // upper is a certified upper bound for log ||T^n||: when both tails are
    // monotone and the window covers them, max(lower, n*tail limits);
    // otherwise n*log(sup_abs). Always lower <= upper.
    NormBoundsLog shift_power_norm_log(long long n, long long win_lo, long long win_hi) const;

    double sup_abs() const;
    TailInfoSide left_tail() const;
    TailInfoSide right_tail() const;

    // Pre-extends the prefix cache to cover weight indices [lo, hi].
    void ensure_range(long long lo, long long hi) const;

    // Compact family label for reports, e.g. "beauzamy(2,1)".
    const std::string& label() const;

  private:
    struct Impl;
    explicit WeightSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace wbs
