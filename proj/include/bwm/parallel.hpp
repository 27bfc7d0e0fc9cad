// Minimal fork-join loop over an index range.
#pragma once

#include <cstddef>
#include <functional>

namespace bwm {

/// Worker count: BWM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls body(begin_chunk, end_chunk) over a partition of [begin, end).
/// The first exception thrown by any chunk is rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 4096);

}  // namespace bwm
