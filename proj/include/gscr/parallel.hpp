#ifndef GSCR_PARALLEL_HPP
#define GSCR_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gscr {

// --threads flag wins; otherwise GSCR_THREADS, otherwise the hardware count.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("GSCR_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 1024) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Dispatch fn(i) for i in [0, n) over a worker pool. Workers pull indices
// from a shared counter; results must be written to per-index slots so the
// output order stays deterministic.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
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
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(threads, n);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace gscr

#endif  // GSCR_PARALLEL_HPP
