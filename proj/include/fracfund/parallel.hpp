#pragma once

#include <cstddef>
#include <functional>

namespace fracfund {

/// Worker count: FRACFUND_THREADS if set (>= 1), otherwise the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is handled exactly once by one worker,
/// so results written per index do not depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracfund
