#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ffspec::detail {

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(begin, end, worker_index) on each, one thread per chunk. Chunk
/// boundaries depend only on (count, workers). The first exception thrown by
/// any worker is rethrown after all workers finish.
template <class Fn>
void for_each_chunk(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    if (count < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, count));
    if (workers == 1) {
        fn(std::uint64_t{0}, count, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = count * w / workers;
            const std::uint64_t end = count * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] {
                try {
                    fn(begin, end, w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Effective worker count for a chunked pass.
inline unsigned worker_count(unsigned requested, std::uint64_t count) {
    requested = std::max(1u, requested);
    return count < requested ? static_cast<unsigned>(std::max<std::uint64_t>(1, count)) : requested;
}

}  // namespace ffspec::detail
