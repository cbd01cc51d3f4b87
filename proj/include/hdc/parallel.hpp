#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hdc {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
};

/// Part `index` of `n` items split into `parts` contiguous, near-equal ranges.
/// The first n % parts ranges get one extra item.
constexpr Range partition(std::size_t n, std::size_t parts, std::size_t index) noexcept {
  const std::size_t base = n / parts;
  const std::size_t extra = n % parts;
  const std::size_t begin = index * base + std::min(index, extra);
  return Range{begin, begin + base + (index < extra ? 1 : 0)};
}

/// Runs fn(range, part) for a static partition of [0, n) over `workers`
/// threads (the caller's thread runs part 0). Because the partition depends
/// only on (n, workers) and every part writes disjoint data, results never
/// depend on scheduling. The first exception thrown by any part is rethrown.
template <typename Fn>
void parallel_for(std::size_t workers, std::size_t n, Fn&& fn) {
  const std::size_t parts = std::max<std::size_t>(1, std::min(workers, n));
  if (parts == 1) {
    fn(Range{0, n}, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(parts);
  std::vector<std::thread> threads;
  threads.reserve(parts - 1);
  for (std::size_t p = 1; p < parts; ++p) {
    threads.emplace_back([&, p] {
      try {
        fn(partition(n, parts, p), p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  }
  try {
    fn(partition(n, parts, 0), std::size_t{0});
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hdc
