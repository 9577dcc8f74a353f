#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace varlp {

namespace detail {
inline std::atomic<int>& thread_cap() {
    static std::atomic<int> cap = [] {
        if (const char* env = std::getenv("VARLP_THREADS")) {
            int n = std::atoi(env);
            if (n >= 1) return n;
        }
        return 1;
    }();
    return cap;
}
} // namespace detail

/// Operator parallelism cap; defaults to VARLP_THREADS or 1.
inline int max_threads() { return detail::thread_cap().load(); }

inline void set_max_threads(int n) { detail::thread_cap().store(n >= 1 ? n : 1); }

/// Runs f(i) for i in [0, n). Each index is computed by exactly one
/// thread, so results do not depend on the thread count as long as f
/// only writes to slot i.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    int threads = max_threads();
    if (threads <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::size_t chunks = static_cast<std::size_t>(threads);
    if (chunks > n) chunks = n;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t begin = n * c / chunks;
        std::size_t end = n * (c + 1) / chunks;
        pool.emplace_back([begin, end, &f] {
            for (std::size_t i = begin; i < end; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace varlp
