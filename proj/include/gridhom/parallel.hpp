#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace gridhom {

// Resolves a worker count: explicit request > GRIDHOM_THREADS > hardware.
int resolve_threads(int requested = 0);

// Splits [0, count) into `chunks` contiguous ranges and runs
// f(chunk_index, begin, end) on a pool of `threads` workers. Results must be
// written to per-chunk storage; callers merge in chunk order so the outcome
// is independent of scheduling.
template <class F>
void parallel_chunks(std::uint64_t count, int chunks, int threads, F&& f) {
    if (count == 0 || chunks <= 0) return;
    if (threads <= 1 || chunks == 1) {
        std::uint64_t begin = 0;
        for (int c = 0; c < chunks; ++c) {
            std::uint64_t end = count * (c + 1) / chunks;
            f(c, begin, end);
            begin = end;
        }
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= chunks) return;
            std::uint64_t begin = count * c / chunks;
            std::uint64_t end = count * (c + 1) / chunks;
            f(c, begin, end);
        }
    };
    int nworkers = threads < chunks ? threads : chunks;
    pool.reserve(nworkers);
    for (int t = 0; t < nworkers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace gridhom
