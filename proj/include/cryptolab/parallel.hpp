#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cryptolab {

// Splits [0, total) into contiguous chunks, one worker thread per chunk.
// Workers must write only to disjoint, preallocated slots so the merged result
// is identical for every worker count.
template <typename Fn>
void parallel_for(std::size_t total, int workers, Fn&& body) {
    if (workers <= 1 || total < 2) {
        body(std::size_t{0}, total);
        return;
    }
    const std::size_t n = static_cast<std::size_t>(workers);
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::size_t chunk = (total + n - 1) / n;
    for (std::size_t w = 0; w < n; ++w) {
        const std::size_t begin = w * chunk;
        if (begin >= total) break;
        const std::size_t end = begin + chunk < total ? begin + chunk : total;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace cryptolab
