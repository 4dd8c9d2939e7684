#pragma once

#include <cstddef>
#include <functional>

namespace mmspace {

/// Worker count used by parallel library calls; 0 restores the default
/// (hardware concurrency).
void set_thread_count(std::size_t count);
std::size_t thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads. The
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mmspace
