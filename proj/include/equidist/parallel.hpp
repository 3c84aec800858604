// parallel.hpp
//
// Deterministic fork/join over an index range. The range is cut into a fixed
// number of chunks that does not depend on the worker count; results come
// back in chunk order, so any fold over them is partition-independent.

#ifndef EQUIDIST_PARALLEL_HPP
#define EQUIDIST_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eqd {

inline constexpr std::int64_t kChunkCount = 64;

/// Evaluate fn(lo, hi) on every chunk of [0, n) and return the per-chunk
/// results in order.
template <class R, class Fn>
std::vector<R> map_chunks(std::int64_t n, unsigned workers, Fn&& fn)
{
    const std::int64_t chunks = std::max<std::int64_t>(1, std::min(n, kChunkCount));
    std::vector<R> results(static_cast<std::size_t>(chunks));
    auto bounds = [&](std::int64_t k) { return n * k / chunks; };

    if (workers <= 1 || chunks == 1) {
        for (std::int64_t k = 0; k < chunks; ++k) results[k] = fn(bounds(k), bounds(k + 1));
        return results;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t k = next.fetch_add(1);
            if (k >= chunks) return;
            try {
                results[k] = fn(bounds(k), bounds(k + 1));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    const unsigned count = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace eqd

#endif
