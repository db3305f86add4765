#include "touchard/error.hpp"

namespace touchard {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_precision: return "invalid-precision";
    case ErrorKind::domain: return "domain";
    case ErrorKind::range: return "range";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::order: return "order";
    case ErrorKind::regime: return "regime";
    case ErrorKind::step: return "step";
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::solver: return "solver";
    case ErrorKind::branch: return "branch";
    case ErrorKind::series_consistency: return "series-consistency";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::precision_exhausted:
      return 3;
    case ErrorKind::solver:
    case ErrorKind::branch:
    case ErrorKind::series_consistency:
      return 4;
    default:
      return 2;
  }
}

}  // namespace touchard
