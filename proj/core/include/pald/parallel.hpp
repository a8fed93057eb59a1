#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace pald {

// Runs fn(begin, end) over a static contiguous partition of [0, count).
// Each index is owned by exactly one worker, so any computation whose
// per-index result does not depend on the partition is schedule-independent.
// jobs == 0 picks the hardware concurrency.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    unsigned workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > count) workers = count != 0 ? static_cast<unsigned>(count) : 1;

    if (workers == 1) {
        fn(std::size_t{0}, count);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = count / workers;
    const std::size_t rem = count % workers;
    std::size_t begin = 0;
    for (unsigned t = 0; t < workers; ++t) {
        const std::size_t len = chunk + (t < rem ? 1 : 0);
        const std::size_t end = begin + len;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace pald
