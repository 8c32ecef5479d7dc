#pragma once

#include <cstddef>
#include <functional>

namespace coherence_lab {

/// Worker count: COHERENCE_LAB_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// body(begin, end) for each. Exceptions from workers are rethrown (first
/// chunk's exception wins).
void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                     unsigned workers = 0);

}  // namespace coherence_lab
