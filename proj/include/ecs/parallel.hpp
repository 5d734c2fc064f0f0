#pragma once
/**
 * @file parallel.hpp
 * @brief Minimal worker pool. Results must be written into index-addressed
 *        slots so output never depends on the worker count or schedule.
 */
#include <cstddef>
#include <functional>

namespace ecs {

// Resolves the worker count: the ECS_JOBS environment variable wins when set
// to a positive integer, then an explicit request, then hardware concurrency.
unsigned effective_jobs(unsigned requested);

// Runs work(0), ..., work(n-1) on up to `jobs` threads. The first exception
// thrown by any invocation is rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& work);

}  // namespace ecs
