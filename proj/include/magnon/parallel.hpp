#pragma once

#include <cstddef>
#include <functional>

namespace magnon
{

/// Environment variable overriding the default worker count.
inline constexpr const char *kThreadsEnvVar = "MAGNON_EP_LAB_THREADS";

/// MAGNON_EP_LAB_THREADS if set to a positive integer, else hardware concurrency (>= 1).
unsigned DefaultThreadCount();

/// Runs body(i) for i in [0, n) on up to `threads` workers.
///
/// Each index is visited exactly once, so bodies that write only to slot i produce
/// identical results for any worker count. If bodies throw, the exception from the
/// smallest failing index is rethrown after all workers join.
void ParallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body);

}  // namespace magnon
