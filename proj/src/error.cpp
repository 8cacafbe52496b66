#include "crem/error.hpp"

namespace crem {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::non_monotone_jumps: return "NonMonotoneJumps";
    case ErrorKind::non_monotone_values: return "NonMonotoneValues";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::unbounded_slope: return "UnboundedSlope";
    case ErrorKind::degenerate_input: return "DegenerateInput";
    case ErrorKind::depth_too_large: return "DepthTooLarge";
    case ErrorKind::bad_zetas: return "BadZetas";
    case ErrorKind::branching_too_large: return "BranchingTooLarge";
    case ErrorKind::grid_mismatch: return "GridMismatch";
    case ErrorKind::insufficient_samples: return "InsufficientSamples";
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::unknown_suite: return "UnknownSuite";
  }
  return "Error";
}

}  // namespace crem
