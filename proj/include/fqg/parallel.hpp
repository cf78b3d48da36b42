#pragma once

#include <cstddef>
#include <functional>

namespace fqg {

/// Worker count: FQG_THREADS when set (minimum 1), else hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. fn must only
/// write to per-index state; callers merge results in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fqg
