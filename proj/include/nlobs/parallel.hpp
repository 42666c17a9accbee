#pragma once

#include <cstddef>
#include <functional>

namespace nlobs {

/// Worker count used by the parallel loops in this library (default 1).
int num_threads();
void set_num_threads(int n);

/// Calls body(begin, end) on contiguous chunks of [0, n). Chunks are disjoint,
/// so per-index results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace nlobs
