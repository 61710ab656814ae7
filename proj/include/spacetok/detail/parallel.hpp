#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace spacetok::detail {

// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
// Block boundaries depend only on n and block_size, never on the thread
// count, so per-block results merged in block order give bit-identical
// totals for any number of workers.
template <typename Fn>
void for_blocks(size_t n, size_t block_size, int threads, Fn&& fn) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const size_t num_blocks = (n + block_size - 1) / block_size;
    if (threads <= 1 || num_blocks == 1) {
        for (size_t b = 0; b < num_blocks; ++b)
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    const size_t use = std::min<size_t>(static_cast<size_t>(threads), num_blocks);
    pool.reserve(use);
    for (size_t t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace spacetok::detail
