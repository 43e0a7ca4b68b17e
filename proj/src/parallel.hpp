#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hx::detail {

/// Returns fn(i) for the smallest i in [0, count) where fn yields a value.
/// Work is strided across `threads` workers; the answer does not depend on
/// scheduling because every worker scans its indices in increasing order and
/// only abandons indices above an already-confirmed hit.
template <class W, class Fn>
std::optional<W> first_hit(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto w = fn(i)) return w;
    }
    return std::nullopt;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> best{count};
  std::vector<std::optional<W>> found(threads);
  std::vector<std::size_t> found_at(threads, count);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned id = 0; id < threads; ++id) {
    pool.emplace_back([&, id] {
      try {
        for (std::size_t i = id; i < count; i += threads) {
          if (i > best.load(std::memory_order_relaxed)) break;
          if (auto w = fn(i)) {
            found[id] = std::move(w);
            found_at[id] = i;
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      } catch (...) {
        errors[id] = std::current_exception();
        best.store(0);
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::size_t pick = threads;
  for (unsigned id = 0; id < threads; ++id) {
    if (found[id] && (pick == threads || found_at[id] < found_at[pick])) pick = id;
  }
  if (pick == threads) return std::nullopt;
  return std::move(found[pick]);
}

}  // namespace hx::detail
