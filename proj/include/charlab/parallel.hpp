#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace charlab {

/// Runs body(i) for i in [0, n) on `workers` threads (0 or 1 runs inline).
/// Work is handed out dynamically; the first exception is rethrown after all
/// workers stop. Callers write results into slot i so output order does not
/// depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace charlab
