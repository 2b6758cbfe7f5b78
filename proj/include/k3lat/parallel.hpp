#pragma once

#include <cstddef>
#include <functional>

namespace k3lat {

/// Worker count used by internally parallel routines; 0 restores the hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace k3lat
