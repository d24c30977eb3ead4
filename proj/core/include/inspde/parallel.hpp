#pragma once

#include <cstddef>
#include <functional>

namespace inspde {

/// Runs body(0..n-1) on up to `workers` threads (0 = hardware concurrency).
/// Jobs must write only to their own slots; callers reduce afterwards in
/// index order, which keeps results byte-identical across worker counts.
/// The first exception thrown by any job is rethrown on the caller.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

unsigned effective_workers(unsigned requested);

} // namespace inspde
