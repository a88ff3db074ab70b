#include "nsspec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace nsspec {

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  threads = std::max(1, threads);
  if (threads == 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<std::int64_t>(threads, count));
  pool.reserve(static_cast<std::size_t>(n) - 1);
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

void blocked_reduce(std::int64_t count, std::int64_t block_size, int threads,
                    const std::function<void(int, std::int64_t, std::int64_t)>& fn,
                    const std::function<void(int)>& merge) {
  if (count <= 0) return;
  block_size = std::max<std::int64_t>(1, block_size);
  threads = std::max(1, threads);
  const std::int64_t num_blocks = (count + block_size - 1) / block_size;

  // Blocks are fixed by block_size alone; waves of `threads` blocks run
  // concurrently and are merged in ascending block order, so totals do not
  // depend on the thread count.
  for (std::int64_t wave = 0; wave < num_blocks; wave += threads) {
    const int in_wave = static_cast<int>(std::min<std::int64_t>(threads, num_blocks - wave));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(in_wave) - 1);
    auto run_block = [&](int slot) {
      const std::int64_t b = wave + slot;
      const std::int64_t first = b * block_size;
      const std::int64_t last = std::min(count, first + block_size);
      fn(slot, first, last);
    };
    for (int s = 1; s < in_wave; ++s) pool.emplace_back(run_block, s);
    run_block(0);
    for (auto& th : pool) th.join();
    for (int s = 0; s < in_wave; ++s) merge(s);
  }
}

}  // namespace nsspec
