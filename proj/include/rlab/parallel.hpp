#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rlab {

// Runs fn(block) for block in [0, blocks) on up to `threads` workers.
// Callers write per-block results and reduce them in block order, which keeps
// every reduction independent of the worker count.
template <class Fn>
void parallel_for_blocks(std::size_t blocks, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = cursor.fetch_add(1); b < blocks; b = cursor.fetch_add(1)) fn(b);
      } catch (...) {
        errors[w] = std::current_exception();
        cursor.store(blocks);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace rlab
