#pragma once

#include <cstdint>
#include <functional>

namespace imgql {

// Runs fn(begin, end) over a fixed partition of [0, n) on up to `workers`
// threads and joins before returning. Chunk boundaries depend only on n and
// the chunk count, never on scheduling, so callers that keep per-chunk state
// produce identical results for any worker count.
void parallel_chunks(std::int64_t n, int workers,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace imgql
