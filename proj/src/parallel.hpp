#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace svead::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Calls fn(begin, end) over [0, count) split into contiguous blocks. Every
/// index is handled by exactly one call; callers must only write state owned
/// by the indices they are given.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  constexpr std::size_t kMinBlock = 2048;
  const std::size_t workers = std::min<std::size_t>(
      resolve_threads(threads), (count + kMinBlock - 1) / kMinBlock);
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t block = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(count, block));
}

}  // namespace svead::detail
