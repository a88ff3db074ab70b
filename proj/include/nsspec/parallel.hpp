#pragma once

#include <cstdint>
#include <functional>

namespace nsspec {

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
/// Iterations must be independent; results land wherever fn writes them.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

/// Deterministic parallel reduction: items [0, count) are split into
/// consecutive blocks of `block_size`; blocks are processed concurrently
/// (fn(block_index, first, last) fills an accumulator slot) and merged
/// serially in ascending block order, so the floating-point result is
/// independent of the thread count.
///
/// `fn` computes block b over items [first, last) into slot s (0-based slot
/// within the current wave); `merge(s)` folds slot s into the caller's total.
void blocked_reduce(std::int64_t count, std::int64_t block_size, int threads,
                    const std::function<void(int slot, std::int64_t first, std::int64_t last)>& fn,
                    const std::function<void(int slot)>& merge);

}  // namespace nsspec
