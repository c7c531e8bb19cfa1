#pragma once

#include <cstddef>
#include <functional>

namespace dicke {

// Worker count from DICKE_PHASE_THREADS (0 or unset = hardware concurrency).
// Throws ConfigError if the variable is set but not a non-negative integer.
unsigned thread_count();

// Runs body(i) for i in [0, n). Exceptions are collected and the one with the
// lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace dicke
