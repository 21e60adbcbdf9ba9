#pragma once

#include <cstddef>
#include <functional>

namespace nbamp {

// Upper bound on worker threads used inside a single operation. Defaults to the
// NONBOOL_AMP_THREADS environment variable when set to a positive integer,
// otherwise std::thread::hardware_concurrency().
unsigned max_threads();
void set_max_threads(unsigned n);

// Splits [0, count) into contiguous chunks and runs body(begin, end) on each.
// Callers only pass bodies whose chunks touch disjoint data, so results do not
// depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace nbamp
