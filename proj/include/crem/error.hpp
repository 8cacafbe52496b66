#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crem {

/// Failure categories raised by the library. Every public operation throws
/// crem::Error; the kind tells callers (and the CLI exit-code mapping) what
/// went wrong without parsing the message.
enum class ErrorKind {
  non_monotone_jumps,
  non_monotone_values,
  domain_error,
  unbounded_slope,
  degenerate_input,
  depth_too_large,
  bad_zetas,
  branching_too_large,
  grid_mismatch,
  insufficient_samples,
  config_error,
  unknown_suite,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crem
