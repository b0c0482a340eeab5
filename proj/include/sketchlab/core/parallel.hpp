#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace sketchlab {

/// Worker count: SKETCHLAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(worker, begin, end) over a static partition of [0, count). Each
/// index is visited exactly once; the first exception thrown is rethrown.
void parallel_blocks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace sketchlab
