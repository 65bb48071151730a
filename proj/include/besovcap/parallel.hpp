#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace besovcap {

/// Name of the environment variable that overrides the worker count.
inline constexpr const char* kWorkersEnv = "BESOVCAP_WORKERS";

/// Worker count: the environment variable wins over `requested`; 0 means
/// hardware concurrency.
unsigned resolve_workers(std::optional<unsigned> requested);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Tasks are
/// claimed dynamically, so callers must write results into per-index slots.
/// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace besovcap
