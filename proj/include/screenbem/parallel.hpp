#pragma once

#include <cstddef>
#include <functional>

namespace screenbem {

/// Global worker count for parallel_for. 0 restores hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs fn over disjoint index chunks [begin, end) covering [0, n).
/// Chunking is static, so output written per-index is identical for any
/// thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace screenbem
