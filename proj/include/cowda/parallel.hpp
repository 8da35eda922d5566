#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cowda {

// Process-wide worker count knob. 0 means "use hardware concurrency".
// Every parallel loop in the library reduces with commutative, associative
// operations over fixed chunk boundaries, so results never depend on this.
inline unsigned& thread_knob() {
  static unsigned knob = 0;
  return knob;
}

inline void set_thread_count(unsigned n) { thread_knob() = n; }

inline unsigned effective_threads() {
  unsigned n = thread_knob();
  if (n == 0) n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return n;
}

// Split [0, total) into one contiguous chunk per worker and run
// fn(chunk_index, begin, end) on each. Caller reduces per-chunk results.
template <typename Fn>
void parallel_chunks(uint64_t total, Fn&& fn) {
  unsigned workers = effective_threads();
  if (total == 0) return;
  if (workers > total) workers = static_cast<unsigned>(total);
  if (workers <= 1) {
    fn(0u, uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  uint64_t base = total / workers;
  uint64_t rem = total % workers;
  uint64_t begin = 0;
  for (unsigned c = 0; c < workers; ++c) {
    uint64_t len = base + (c < rem ? 1 : 0);
    uint64_t end = begin + len;
    pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace cowda
