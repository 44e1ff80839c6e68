#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace detval {

/// Run fn(0..n-1) on up to `jobs` worker threads. Callers write results into
/// preallocated index slots, so the output is independent of scheduling and
/// of the degree. The first exception thrown by a task is rethrown after all
/// workers have joined.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
    if (n == 0) return;
    if (jobs == 0) jobs = 1;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detval
