#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace regspec {

/// 0 means one thread per hardware core.
int resolve_threads(int requested);

/// results[t] = task(t) for t in [0, count). Tasks are claimed from a shared
/// counter but every result lands in its own slot, so the output is
/// independent of the thread count and of completion order. If tasks throw,
/// the exception of the lowest failing index is rethrown after all workers stop.
template <class F>
auto parallel_map(int count, int threads, F task) -> std::vector<std::invoke_result_t<F, int>> {
    using R = std::invoke_result_t<F, int>;
    std::vector<R> results(count > 0 ? count : 0);
    if (count <= 0) return results;
    const int workers = std::min(resolve_threads(threads), count);

    std::atomic<int> next{0};
    std::mutex error_mutex;
    int error_index = count;
    std::exception_ptr error;
    auto work = [&] {
        for (int t = next++; t < count; t = next++) {
            try {
                results[t] = task(t);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (t < error_index) {
                    error_index = t;
                    error = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace regspec
