#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace affmod {

inline int default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

/// Run fn(i) for i in [0, n) on `workers` threads. Work is handed out in
/// chunks through an atomic counter; results must be written to disjoint,
/// preallocated slots so output stays deterministic.
template <class Fn>
inline void parallel_for(long long n, Fn&& fn, int workers = 0, long long chunk = 0) {
    if (workers <= 0) workers = default_workers();
    if (n <= 0) return;
    if (workers == 1 || n == 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    if (chunk <= 0) chunk = std::max(1ll, n / (workers * 16ll));
    std::atomic<long long> next{0};
    auto body = [&] {
        for (;;) {
            long long start = next.fetch_add(chunk);
            if (start >= n) break;
            long long end = std::min(n, start + chunk);
            for (long long i = start; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

}  // namespace affmod
