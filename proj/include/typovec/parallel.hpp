#pragma once

#include <cstddef>
#include <functional>

namespace typovec {

// Runs fn(0..n-1) on up to `jobs` threads (0 = hardware concurrency).
// Each index is visited exactly once; the first exception thrown by any
// task is rethrown after all workers have joined.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace typovec
