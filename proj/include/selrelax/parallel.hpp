#pragma once

#include <cstddef>
#include <functional>

namespace selrelax {

/// Worker count: explicit request > SELECTRELAX_JOBS env var > hardware.
unsigned resolve_jobs(unsigned requested);

/// Run fn(i) for i in [0, n) on up to `jobs` threads. Each index writes only
/// its own output slot, so results are identical for any thread count.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace selrelax
