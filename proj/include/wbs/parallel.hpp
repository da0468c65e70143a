#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace wbs {

// Evaluates eval(lo, hi) over a contiguous block partition of [0, count).
// Results come back in block order, so any order-respecting fold is
// independent of the worker count; per-block values must themselves not
// depend on the partition (all grid kernels here read only prefix caches).
template <class Local, class Eval>
std::vector<Local> run_blocks(long long count, int workers, Eval eval) {
    if (count <= 0) return {};
    long long nb = std::max(1, workers);
    nb = std::min<long long>(nb, count);
    std::vector<Local> out(static_cast<std::size_t>(nb));
    if (nb == 1) {
        out[0] = eval(0, count);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nb));
    for (long long b = 0; b < nb; ++b) {
        long long lo = count * b / nb;
        long long hi = count * (b + 1) / nb;
        pool.emplace_back([&, b, lo, hi] { out[static_cast<std::size_t>(b)] = eval(lo, hi); });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace wbs
