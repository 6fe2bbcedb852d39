#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ebfreq {

// Work is cut into a fixed number of shards regardless of the thread count, so
// per-shard partial results combined in shard order are thread-count independent.
inline constexpr std::size_t kDefaultShards = 64;

struct ShardRange {
  std::size_t index;
  std::size_t begin;
  std::size_t end;
};

inline ShardRange shard_range(std::size_t n_items, std::size_t n_shards, std::size_t s) {
  return {s, s * n_items / n_shards, (s + 1) * n_items / n_shards};
}

// Calls fn(ShardRange) for every shard, on up to `threads` threads. The first
// exception thrown by any shard is rethrown on the calling thread.
template <class Fn>
void for_each_shard(std::size_t n_items, std::size_t n_shards, unsigned threads, Fn&& fn) {
  if (n_shards == 0) return;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_shards)));
  if (workers == 1) {
    for (std::size_t s = 0; s < n_shards; ++s) fn(shard_range(n_items, n_shards, s));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < n_shards; s = next++) {
          try {
            fn(shard_range(n_items, n_shards, s));
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ebfreq
