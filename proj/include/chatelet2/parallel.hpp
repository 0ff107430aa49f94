#ifndef CHATELET2_PARALLEL_HPP
#define CHATELET2_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chatelet2 {

// Number of worker threads: CHATELET_THREADS if set and positive, otherwise
// min(hardware_concurrency, 8).
int default_thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers. Work items are
// handed out by an atomic counter; results must be written to slot i of a
// caller-owned vector so the outcome is identical for every thread count.
// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    if (threads < 1) threads = 1;
    if (n == 0) return;
    if (threads == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t nworkers = std::min(static_cast<std::size_t>(threads), n);
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace chatelet2

#endif
