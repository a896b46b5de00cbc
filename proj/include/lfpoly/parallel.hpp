#pragma once

#include <cstddef>
#include <functional>

namespace lfpoly {

/// Upper bound on worker threads used by library loops (default: hardware concurrency).
void set_thread_limit(std::size_t threads);
std::size_t thread_limit();

/// Calls body(i) for i in [0, n). Bodies must write only to their own slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lfpoly
