#pragma once

#include <cstddef>
#include <functional>

namespace lplab {

// Runs task(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Tasks are claimed dynamically; callers that need
// reproducible output must write into per-task slots and reduce afterwards.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task);

int resolve_threads(int requested);

}  // namespace lplab
