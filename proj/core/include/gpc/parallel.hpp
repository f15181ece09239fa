#pragma once

#include <functional>

namespace gpc {

// Runs fn(0..n-1) on up to `workers` threads (0 = hardware concurrency).
// Work items must not share mutable state; outputs indexed by i make results
// independent of the worker count. The first exception thrown by any item is
// rethrown on the calling thread.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

int default_workers();

}  // namespace gpc
