#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace meanclt {

/// Resolves a requested thread count: values <= 0 mean "auto".
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end) over a static partition of [0, n). Chunk boundaries
/// are deterministic, so reductions that fold chunks in index order are
/// reproducible for any thread count.
template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    const int t = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (t <= 1 || n == 0) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    const std::size_t chunk = (n + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
    for (int i = 0; i < t; ++i) {
        const std::size_t lo = static_cast<std::size_t>(i) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace meanclt
