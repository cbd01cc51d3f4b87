#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdc {

enum class ErrorKind {
  invalid_dimension,
  dimension_mismatch,
  out_of_range,
  empty_bundle,
  invalid_argument,
  window_too_short,
  missing_class,
  channel_mismatch,
  parse_error,
  io_error,
  unknown_operation,
  memory_budget,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::empty_bundle: return "empty-bundle";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::window_too_short: return "window-too-short";
    case ErrorKind::missing_class: return "missing-class";
    case ErrorKind::channel_mismatch: return "channel-mismatch";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
    case ErrorKind::unknown_operation: return "unknown-operation";
    case ErrorKind::memory_budget: return "memory-budget";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace hdc
