#ifndef PARTITION_LAB_PARALLEL_HPP
#define PARTITION_LAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "partition_lab/common.hpp"

namespace partition_lab {

/// Deterministic work splitting: the range [0, n) is cut into fixed-size
/// chunks that do not depend on the worker count, so any chunk-indexed
/// output (and any reduction combined in chunk order) is identical for
/// 1, 2 or N threads.
template <typename Fn>
void parallel_chunks(u64 n, u64 chunk_size, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const u64 n_chunks = (n + chunk_size - 1) / chunk_size;

    auto run_chunk = [&](u64 c) {
        const u64 lo = c * chunk_size;
        const u64 hi = std::min(n, lo + chunk_size);
        fn(c, lo, hi);
    };

    if (threads <= 1 || n_chunks == 1) {
        for (u64 c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<u64> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&] {
        for (;;) {
            const u64 c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks || failed.load(std::memory_order_relaxed)) break;
            try {
                run_chunk(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                break;
            }
        }
    };

    const unsigned nworkers =
        static_cast<unsigned>(std::min<u64>(threads, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Map-reduce over [0, n) with per-chunk accumulators combined sequentially
/// in chunk order. The combine order is fixed, so floating accumulations are
/// bit-identical regardless of the thread count.
template <typename Acc, typename Map, typename Combine>
Acc parallel_reduce(u64 n, u64 chunk_size, unsigned threads, Acc init,
                    Map&& map, Combine&& combine) {
    if (n == 0) return init;
    if (chunk_size == 0) chunk_size = 1;
    const u64 n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Acc> partial(n_chunks, init);
    parallel_chunks(n, chunk_size, threads, [&](u64 c, u64 lo, u64 hi) {
        Acc acc = init;
        for (u64 i = lo; i < hi; ++i) map(i, acc);
        partial[c] = acc;
    });
    Acc total = init;
    for (u64 c = 0; c < n_chunks; ++c) combine(total, partial[c]);
    return total;
}

}  // namespace partition_lab

#endif
