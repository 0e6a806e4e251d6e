#pragma once

#include <functional>

namespace srh {

// Worker count: SRH_THREADS if set (clamped to [1, 64]), else hardware concurrency.
int worker_count();

// Static partition of [0, n) over the workers.  Results must be written to
// disjoint slots so the outcome is independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace srh
