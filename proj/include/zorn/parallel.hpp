#pragma once

/**
 * Minimal fork-join helper for the batch scans (enumeration, subloop
 * closures).  Work is split into contiguous blocks; the ZORN_THREADS
 * environment variable caps the worker count.  With one worker everything
 * runs inline on the calling thread, so the library stays usable in
 * single-core containers without spawning.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zorn {

[[nodiscard]] inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("ZORN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            hw = std::min<unsigned>(hw, static_cast<unsigned>(std::min<long>(v, 1024)));
    }
    return hw;
}

/**
 * Runs fn(begin, end) over a partition of [0, n); blocks until every worker
 * finishes.  The first exception thrown by any block is rethrown here.
 */
template <typename Fn>
inline void parallel_blocks(std::uint64_t n, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(worker_count(), n == 0 ? 1 : n));
    if (workers <= 1) {
        fn(std::uint64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, n);
        const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, n);
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zorn
