#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace papr {

enum class ErrorKind {
  InvalidDescriptor,
  DegeneratePulse,
  DegenerateSignal,
  UnsupportedOrder,
  Framing,
  Config,
  IllConditionedGram,
  SearchSpaceTooLarge,
  MetricsOutOfRange,
  Plan,
  Precondition,
  Io,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is
/// stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace papr
