#pragma once

#include <cstddef>
#include <functional>

namespace qpm {

// Runs fn(i) for i in [0, n) on up to QPM_THREADS (default: hardware) threads
// with a static block partition.  Iterations must be independent; results are
// bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Thread count parallel_for will use (>= 1).
unsigned parallel_threads();

}  // namespace qpm
