#pragma once

#include <cstddef>
#include <functional>

namespace selberg {

// Worker count: RIESZ_THREADS if set (>= 1), else hardware concurrency.
std::size_t thread_count();

// Splits [0, n) into contiguous chunks, one per worker. The body must only
// write to disjoint outputs; callers reduce serially afterwards so results do
// not depend on the worker count. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace selberg
