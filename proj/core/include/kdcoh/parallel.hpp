#pragma once

#include <functional>

namespace kdcoh {

// Worker budget: min(hardware threads, KDCOH_THREADS if set). A value of 1
// forces serial execution.
int thread_budget();

// Run fn(0..n-1), possibly concurrently, under the thread budget. Callers
// write results into per-index slots, so any schedule yields the same data.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace kdcoh
