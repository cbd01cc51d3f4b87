#pragma once

#include <atomic>
#include <cstdint>

namespace hdc {

/// Process-wide instrumentation counter. The unit is one component-operation:
/// a kernel touching n components of m input vectors adds n * m. Kernels
/// accumulate locally and publish once per call, so the counter costs nothing
/// measurable in the hot loops.
class OpCounter {
 public:
  void add(std::uint64_t n) noexcept { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t value() const noexcept { return count_.load(std::memory_order_relaxed); }
  void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

inline OpCounter& op_counter() noexcept {
  static OpCounter counter;
  return counter;
}

}  // namespace hdc
