#pragma once

#include <cstddef>
#include <functional>

namespace ustat {

// Maps a requested thread count to an actual one (<= 0 means "use all cores").
int resolve_threads(int requested);

// Runs body(i) for i = 0..count-1, claiming indices dynamically across the
// given number of threads. Bodies must write only to slots owned by their
// index; execution order is unspecified, so determinism has to come from the
// per-index work itself (per-index RNG streams, per-index result slots).
// The first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ustat
