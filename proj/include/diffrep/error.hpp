#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffrep {

enum class ErrorKind {
  WindowOverflow,
  GroupMismatch,
  SizeOutOfRange,
  CapExceeded,
  EmptySet,
  Degenerate,
  HypothesisViolated,
  NotSymmetric,
  ZeroFunction,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every failure the library reports; callers
/// dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace diffrep
