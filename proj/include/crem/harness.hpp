#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crem/io.hpp"

namespace crem {

/// One comparison inside a suite. `provenance` says where the expected value
/// comes from: "exact" (closed form), "derived" (independent computation) or
/// "empirical" (Monte Carlo property).
struct CheckRecord {
  std::string name;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string provenance;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;  // sorted by name

  bool pass() const noexcept;
  Json to_json() const;
};

struct SuiteOptions {
  /// Replaces every pinned seed with values derived from this one.
  std::optional<std::uint64_t> seed_override;
  unsigned threads = 1;
};

/// Suite names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

/// Runs one suite; Error(unknown_suite) for other names.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opts = {});

}  // namespace crem
