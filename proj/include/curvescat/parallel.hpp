#ifndef CURVESCAT_PARALLEL_HPP
#define CURVESCAT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace curvescat {

// Thread count used for data-parallel loops: explicit request if positive,
// otherwise the CURVESCAT_THREADS environment variable, otherwise the
// hardware concurrency.
unsigned thread_count(int requested = 0);

// Runs fn(i) for i in [0, n) on up to thread_count(threads) threads.
// fn must not touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace curvescat

#endif
