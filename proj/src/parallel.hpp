#pragma once

#include <cstddef>
#include <functional>

namespace leviscope::detail {

// Runs body(i) for i in [0, count) on up to max_threads() workers. Each index
// must write only to its own output slot.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace leviscope::detail
