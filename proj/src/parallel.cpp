#include "normsum/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace normsum {

namespace {

std::atomic<unsigned> g_worker_threads{0};

unsigned resolve_threads() {
  unsigned n = g_worker_threads.load(std::memory_order_relaxed);
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace

void set_worker_threads(unsigned n) {
  g_worker_threads.store(n, std::memory_order_relaxed);
}

unsigned worker_threads() { return resolve_threads(); }

void parallel_chunks(u64 count, u64 chunk_size,
                     const std::function<void(u64, u64)>& fn) {
  if (count == 0) return;
  if (chunk_size == 0) chunk_size = count;
  const u64 chunks = (count + chunk_size - 1) / chunk_size;
  const unsigned threads =
      static_cast<unsigned>(std::min<u64>(resolve_threads(), chunks));

  if (threads <= 1) {
    for (u64 c = 0; c < chunks; ++c) {
      fn(c * chunk_size, std::min(count, (c + 1) * chunk_size));
    }
    return;
  }

  std::atomic<u64> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (u64 c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
          fn(c * chunk_size, std::min(count, (c + 1) * chunk_size));
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace normsum
