#pragma once

#include "core/types.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cdeim {

/// Clamp a requested thread count to something sane; 0 means "use the
/// hardware concurrency".
inline Index resolve_threads(Index requested, Index work_items) {
    Index n = requested > 0 ? requested
                            : static_cast<Index>(std::thread::hardware_concurrency());
    if (n < 1) {
        n = 1;
    }
    return std::min(n, std::max<Index>(work_items, 1));
}

/// Run body(i) for i in [0, n) across up to `threads` workers in a static
/// interleaved partition. Each index must write only its own output slot;
/// results are then independent of scheduling. The first exception thrown by
/// any worker is rethrown on the caller.
template <typename F>
void parallel_for(Index n, Index threads, F&& body) {
    const Index workers = resolve_threads(threads, n);
    if (workers <= 1) {
        for (Index i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (Index t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (Index i = t; i < n; i += workers) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace cdeim
