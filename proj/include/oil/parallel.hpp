#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace oil {

/// Number of worker threads to use. OIL_THREADS caps it; 1 disables
/// parallelism entirely.
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("OIL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

/// Runs f(i) for i in [0, count). Work items must be independent; any output
/// must be written to slot i of a preallocated buffer so that parallel and
/// serial runs produce identical results. If several items throw, the
/// exception of the lowest index is rethrown, matching the serial run.
template <class F>
void parallel_for(std::size_t count, F&& f) {
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(thread_budget(), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_error_index = count;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < first_error_index) {
                        first_error_index = i;
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace oil
