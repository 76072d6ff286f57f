#pragma once

#include <cstddef>
#include <functional>

namespace ringopo {

// Worker count: min(RINGOPO_THREADS, hardware_concurrency), at least 1.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks;
// callers write results into preassigned slots so output ordering never
// depends on thread scheduling. Exceptions from workers are rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ringopo
