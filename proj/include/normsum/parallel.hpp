#pragma once

#include <functional>

#include "normsum/ints.hpp"

namespace normsum {

/// Caps the number of worker threads for range-partitioned passes.
/// 0 restores the default (hardware concurrency). Results never depend on
/// the setting; it only bounds parallelism.
void set_worker_threads(unsigned n);
unsigned worker_threads();

/// Splits [0, count) into chunks of chunk_size and runs fn(begin, end) for
/// each, distributing chunks over the worker pool. Chunks are disjoint, so
/// fn may write freely to per-chunk state. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_chunks(u64 count, u64 chunk_size,
                     const std::function<void(u64, u64)>& fn);

}  // namespace normsum
