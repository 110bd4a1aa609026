#pragma once

#include <cstdint>
#include <functional>

namespace ppra {

// Worker-pool size used by the parallel helpers below.  Set once from the
// CLI (--workers); defaults to the hardware thread count.
int default_workers();
void set_default_workers(int workers);
int hardware_workers();

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on `chunk`, never on the worker count, so any
// computation that writes per-chunk results to disjoint slots (or combines
// per-chunk partials in chunk order) is bit-reproducible for every worker
// count.  workers <= 0 means default_workers().
void parallel_chunks(std::int64_t n, std::int64_t chunk,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn,
                     int workers = 0);

}  // namespace ppra
