#pragma once
// Deterministic parallel map: the work partition depends only on the item
// count, never on the thread count, and per-block results are combined
// serially in block order. Reruns with any --threads value produce identical
// floating-point output.

#include <cstddef>
#include <functional>
#include <vector>

namespace boltzlab {

// Global worker count (set once from the CLI; defaults to hardware).
void set_thread_count(int n);
int thread_count();

// Invokes fn(block_index, begin, end) for a fixed partition of [0, n_items).
// Blocks are distributed over threads; fn must only write state owned by its
// block index.
void parallel_blocks(std::size_t n_items,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Deterministic block count for n_items (independent of thread count).
std::size_t block_count_for(std::size_t n_items);

// Serial pairwise combination of per-block partial sums.
double combine_blocks(const std::vector<double>& partials);

}  // namespace boltzlab
