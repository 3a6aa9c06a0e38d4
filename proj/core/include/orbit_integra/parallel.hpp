#ifndef ORBIT_INTEGRA_PARALLEL_HPP
#define ORBIT_INTEGRA_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orbit_integra {

/// Runs fn(i) for i in [0, count). Index ranges are split statically so each
/// slot is written by exactly one thread; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_threads = 0)
{
    unsigned threads = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

/// Fixed-shape pairwise reduction: the result depends only on the input
/// order, never on thread count.
template <class T, class Add>
T pairwise_reduce(std::vector<T> values, Add add, T zero)
{
    if (values.empty()) return zero;
    while (values.size() > 1) {
        std::vector<T> next;
        next.reserve((values.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(add(values[i], values[i + 1]));
        if (values.size() % 2) next.push_back(std::move(values.back()));
        values = std::move(next);
    }
    return std::move(values.front());
}

}  // namespace orbit_integra

#endif
