#include "diffrep/error.hpp"

namespace diffrep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::WindowOverflow: return "WindowOverflow";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace diffrep
