#pragma once

#include <cstddef>
#include <functional>

namespace innerent {

/// Number of worker threads for a request; 0 means hardware concurrency.
unsigned resolve_threads(int requested);

/// Calls body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace innerent
