#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace ehrhart {

/// Worker count for jobs = 0.
inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and delivers the results to
/// sink(i, result) in index order, as soon as each prefix is complete.
template <typename Result>
void ordered_parallel_for(std::size_t count, unsigned jobs, const std::function<Result(std::size_t)>& fn,
                          const std::function<void(std::size_t, Result&)>& sink) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            Result r = fn(i);
            sink(i, r);
        }
        return;
    }
    // Batches of `jobs` items keep memory bounded and output streaming.
    for (std::size_t start = 0; start < count; start += jobs) {
        const std::size_t end = std::min(count, start + jobs);
        std::vector<std::optional<Result>> results(end - start);
        std::vector<std::exception_ptr> errors(end - start);
        std::vector<std::thread> workers;
        for (std::size_t i = start; i < end; ++i)
            workers.emplace_back([&, i] {
                try {
                    results[i - start].emplace(fn(i));
                } catch (...) {
                    errors[i - start] = std::current_exception();
                }
            });
        for (auto& w : workers) w.join();
        for (std::size_t i = start; i < end; ++i) {
            if (errors[i - start]) std::rethrow_exception(errors[i - start]);
            sink(i, *results[i - start]);
        }
    }
}

}  // namespace ehrhart
