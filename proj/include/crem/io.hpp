#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crem/covariance.hpp"
#include "crem/estimators.hpp"
#include "crem/paths.hpp"

namespace crem {

using Json = nlohmann::json;

/// {"zeta":[...],"q":[...]}. Shape errors raise Error(config_error); path
/// invariants raise the StepPath errors.
Json path_to_json(const StepPath& p);
StepPath path_from_json(const Json& j);

/// {"kind":"identity"}, {"kind":"power","p":2},
/// {"kind":"two_speed","theta":2,"c":0.25},
/// {"kind":"piecewise_linear","knots":[[0,0],[1,1]]}, {"kind":"rem"}.
Json covariance_to_json(const CovarianceSpec& spec);
CovarianceSpec covariance_from_json(const Json& j);

/// Reads and parses a JSON file; Error(config_error) on I/O or syntax errors.
Json read_json_file(const std::string& file);

struct RunConfig {
  std::string command;    // analytic | simulate | verify
  std::string operation;  // e.g. hopf, free-energy, suite name
  CovarianceSpec covariance;
  StepPath path;
  std::vector<double> t;
  int N = 8;
  int M = 0;
  int K = kDefaultBranching;
  int inner = kDefaultInner;
  int outer = 200;
  std::size_t replicas = 200;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string method = "direct";
  double theta = 2.0;
  double c = 0.25;
  std::vector<double> zetas;  // cascade zetas; defaults to the path's jumps
  std::vector<double> q;      // coordinate vector for psi-grad / hj-h
  unsigned threads = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

Json run_config_to_json(const RunConfig& cfg);
/// Unknown keys and type mismatches raise Error(config_error).
RunConfig run_config_from_json(const Json& j);

/// Validates cross-field requirements (seed for simulate, known command).
void validate_run_config(const RunConfig& cfg);

/// Header and row for the estimate CSV format.
std::string csv_header();
std::string csv_row(const FreeEnergyEstimate& e);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace crem
