#pragma once

#include <cstddef>
#include <functional>

namespace geosph {

/// Worker count: hardware concurrency capped by the GEOSPH_THREADS
/// environment variable (read once).
int thread_count();

/// Runs fn(begin, end) over [0, n) split across the workers; serial when a
/// single worker is configured or the range is small. Chunks are fixed by
/// the worker count, so results do not depend on scheduling.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace geosph
