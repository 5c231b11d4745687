#pragma once

#include <functional>

namespace zakgross {

/// Number of workers to use for a requested count; <= 0 means one per core.
int resolve_workers(int requested);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled exactly once; the first exception thrown is rethrown here.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace zakgross
