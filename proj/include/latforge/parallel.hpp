#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace latforge {

// Runs fn(block) for block = 0..blocks-1 across worker threads. Blocks are
// claimed from a shared counter; fn must only touch block-local state so the
// merged outcome is order-independent.
inline void parallel_for_blocks(std::size_t blocks,
                                const std::function<void(std::size_t)>& fn,
                                unsigned threads = 0) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      fn(b);
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = std::min<std::size_t>(threads, blocks);
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace latforge
