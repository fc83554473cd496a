#pragma once

#include <cstddef>
#include <functional>

namespace crie::detail {

// Runs body(0..n-1) across hardware threads with a static block partition.
// Callers own any output slots, so results land in deterministic positions
// regardless of scheduling; the first exception thrown by a body is rethrown
// after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace crie::detail
