#pragma once

#include <cstddef>
#include <functional>

namespace psesk {

// Worker count: PSESK_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n). Exceptions from workers are rethrown on the caller
// (the one with the lowest index wins, so failures are reproducible).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace psesk
