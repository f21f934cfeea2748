#ifndef HODGEHX_PARALLEL_HPP
#define HODGEHX_PARALLEL_HPP

#include <functional>

namespace hodgehx {

// Number of worker threads used by element loops and row-parallel products.
// Reads HODGEHX_THREADS once on first use; set_thread_cap overrides it.
int max_threads();
void set_thread_cap(int n);

// Runs fn(begin, end) over a block partition of [0, n). Callers must only
// write to disjoint slots indexed by the loop variable, so the result is
// bitwise independent of the thread count.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace hodgehx

#endif
