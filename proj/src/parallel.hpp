#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cpdyn::detail {

inline int thread_count() {
    if (const char* env = std::getenv("CPDYN_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Run fn(i) for i in [0, n).  Results must be written into per-index slots by
// the caller so the outcome is independent of the scheduling.
template <typename F>
void parallel_for(long n, F&& fn) {
    const int nt = std::min<long>(thread_count(), n);
    if (nt <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace cpdyn::detail
