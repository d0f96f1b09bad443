#ifndef RESNET_PARALLEL_HPP
#define RESNET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace resnet {

/// Worker count: RESNET_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
std::size_t thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers. Indices
/// are claimed dynamically; callers write results into per-index slots so
/// the outcome does not depend on scheduling. The first exception thrown
/// by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace resnet

#endif
