#pragma once

#include <cstddef>
#include <functional>

namespace lindgeo {

/// Worker count: LINDGEO_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned default_threads();

/// Runs task(i) for i in [0, n_tasks) on up to `threads` workers (0 selects
/// default_threads()). Tasks must write to disjoint outputs; the first
/// exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t n_tasks, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace lindgeo
