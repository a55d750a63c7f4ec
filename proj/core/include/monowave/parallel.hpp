#pragma once

#include <cstddef>
#include <functional>

namespace monowave {

/// requested > 0 wins; otherwise MONOWAVE_THREADS; otherwise the hardware
/// concurrency (at least 1).
int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown by a worker is rethrown.
/// Callers store results by index and reduce afterwards, so output never
/// depends on scheduling.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace monowave
