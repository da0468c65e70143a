#pragma once

// Test-side oracles, kept independent of the library's prefix-sum and
// accumulation paths: plain loops over weight_at / log_abs_at.

#include <cmath>
#include <map>
#include <vector>

#include "wbs/constructor.hpp"
#include "wbs/operator_engine.hpp"
#include "wbs/rng.hpp"
#include "wbs/weights.hpp"

namespace oracles {

// direct floating-point product of |w_j| over [a, b]
inline double direct_product(const wbs::WeightSequence& ws, long long a, long long b) {
    double p = 1.0;
    for (long long j = a; j <= b; ++j) p *= std::abs(ws.weight_at(j));
    return p;
}

// direct log-domain sum, sequential, no compensation
inline double direct_log_sum(const wbs::WeightSequence& ws, long long a, long long b) {
    double s = 0.0;
    for (long long j = a; j <= b; ++j) s += ws.log_abs_at(j);
    return s;
}

// Salas grid cell evaluated straight off the definition.
inline double salas_cell(const wbs::WeightSequence& ws, long long m, long long n, bool ratio) {
    double left = direct_log_sum(ws, m - n + 1, m);
    double right = -direct_log_sum(ws, m + 1, m + n);
    return ratio ? left + right : std::max(left, right);
}

inline wbs::SparseVector random_sparse(wbs::SplitMix64& rng, long long radius, int max_terms) {
    wbs::SparseVector v;
    int terms = static_cast<int>(rng.uniform_int(1, max_terms));
    for (int i = 0; i < terms; ++i) {
        long long idx = rng.uniform_int(-radius, radius);
        double ang = rng.uniform(0.0, 6.283185307179586);
        double lm = rng.uniform(-2.0, 2.0);
        v.set(idx, wbs::Amplitude::from_log({std::cos(ang), std::sin(ang)}, lm));
    }
    return v;
}

// random positive table family with constant tails; |w| in [1/2, 2]
inline wbs::WeightSequence random_table(wbs::SplitMix64& rng) {
    long long w = rng.uniform_int(2, 4);
    std::map<long long, wbs::cplx> entries;
    for (long long n = -w; n <= w; ++n) entries[n] = std::exp(rng.uniform(-0.7, 0.7));
    auto lt = wbs::WeightSequence::TableTail::constant(std::exp(rng.uniform(-0.7, 0.7)));
    auto rt = wbs::WeightSequence::TableTail::constant(std::exp(rng.uniform(-0.7, 0.7)));
    return wbs::WeightSequence::table(entries, lt, rt);
}

}  // namespace oracles
