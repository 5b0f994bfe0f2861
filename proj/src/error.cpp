#include "papr_shaper/error.hpp"

namespace papr {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDescriptor: return "invalid-descriptor";
    case ErrorKind::DegeneratePulse: return "degenerate-pulse";
    case ErrorKind::DegenerateSignal: return "degenerate-signal";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::Framing: return "framing";
    case ErrorKind::Config: return "config";
    case ErrorKind::IllConditionedGram: return "ill-conditioned-gram";
    case ErrorKind::SearchSpaceTooLarge: return "search-space-too-large";
    case ErrorKind::MetricsOutOfRange: return "metrics-out-of-range";
    case ErrorKind::Plan: return "plan";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace papr
