#pragma once

#include <cstddef>
#include <functional>

namespace bhhg {

/// Number of worker threads parallel_for uses. Resolution order:
/// explicit set_thread_count(), BHHG_THREADS env var, hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs fn(i) for i in [begin, end) across the worker threads. Blocks until
/// done; rethrows the first exception. fn must write only to disjoint slots.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

} // namespace bhhg
