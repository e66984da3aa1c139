#pragma once

#include <cstddef>
#include <functional>

namespace hinfty {

/// Worker count: HINFTY_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n). Iterations must write to disjoint outputs.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace hinfty
