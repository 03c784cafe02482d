#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace relcat {

/// Worker count: RELCAT_THREADS env var, else 1. Parallelism is an internal
/// detail; all results are merged by index so output never depends on it.
inline int thread_count() {
    if (const char* s = std::getenv("RELCAT_THREADS")) {
        int n = std::atoi(s);
        if (n >= 1) return n;
    }
    return 1;
}

/// Run fn(i) for i in [0, n). Each job writes only to its own slot in
/// caller-owned storage; chunks are static so the schedule is reproducible.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    int workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace relcat
