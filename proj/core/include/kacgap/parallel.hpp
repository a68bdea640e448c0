#pragma once

#include <cstddef>
#include <functional>

namespace kacgap {

/// Worker count: hardware concurrency, capped by the KACGAP_THREADS
/// environment variable when it holds a positive integer.
unsigned thread_count();

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end, worker) on each. Exceptions from workers are rethrown
/// on the calling thread (first one wins).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& body,
                  unsigned max_workers = 0);

}  // namespace kacgap
