#pragma once

#include <cstddef>
#include <functional>

namespace trmf {

/// Worker count from TRMF_THREADS, else the number of hardware threads.
std::size_t thread_count_from_env();

/// Runs body(0..count-1) on up to `threads` workers. Each index runs exactly
/// once; results must be written to index-owned slots. The first exception
/// thrown is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace trmf
