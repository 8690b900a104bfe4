#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gnp {

/// Number of contiguous blocks to split a work range into; never depends on the range contents.
inline unsigned worker_count() noexcept {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs fn(block, begin, end) over `blocks` contiguous slices of [0, total). Callers merge
/// per-block results in block order, so the outcome is fixed for a given block count.
template <class Fn>
void for_each_block(std::uint64_t total, unsigned blocks, Fn&& fn) {
    blocks = std::max(1u, blocks);
    if (total < blocks) blocks = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
    const std::uint64_t step = total / blocks;
    const std::uint64_t extra = total % blocks;
    auto begin_of = [&](unsigned b) { return b * step + std::min<std::uint64_t>(b, extra); };
    if (blocks == 1) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(blocks);
    for (unsigned b = 0; b < blocks; ++b) {
        threads.emplace_back([&, b] { fn(b, begin_of(b), begin_of(b + 1)); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace gnp
