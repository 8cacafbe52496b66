#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crem/cascade.hpp"
#include "crem/covariance.hpp"
#include "crem/paths.hpp"

namespace crem {

enum class Method { direct, nested };

std::string_view to_string(Method m) noexcept;

inline constexpr int kDefaultInner = 10000;
inline constexpr int kMinInner = 100;
inline constexpr int kMaxNestedLevels = 2;

struct EstimateParams {
  int N = 0;
  int M = 0;
  double t = 0.0;
  std::string path;
  std::string cov;
  int K = 0;      // direct only
  int inner = 0;  // nested only
  int outer = 0;  // nested only
};

struct FreeEnergyEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replicas = 0;
  Method method = Method::direct;
  std::uint64_t seed = 0;
  EstimateParams params;
  /// Nested: |estimate(inner) - estimate(inner/2)|; direct: |estimate(K) -
  /// estimate(2K)| when requested.
  std::optional<double> bias_proxy;
  /// Per-replica values, in replica order.
  std::vector<double> samples;
};

/// CSV-safe identifier "zeta:q;zeta:q;...".
std::string path_id(const StepPath& q);

/// Error(grid_mismatch) unless the path's jump points after 0 equal zetas.
void check_alignment(const StepPath& q, std::span<const double> zetas);

struct DirectConfig {
  CovarianceSpec spec;
  int N = 1;
  std::vector<double> zetas;  // zeta_1 .. zeta_M; must match q
  int K = kDefaultBranching;
  double t = 0.0;
  StepPath q;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool truncation_proxy = false;  // also run with 2K
};

/// -(1/N) log sum_alpha v_alpha sum_sigma exp(H_N(t,q,sigma,alpha)) for one
/// disorder replica, over the K-truncated cascade.
double direct_replica_value(const DirectConfig& cfg, std::size_t replica);

FreeEnergyEstimate estimate_free_energy_direct(const DirectConfig& cfg);

struct NestedConfig {
  CovarianceSpec spec;
  int N = 1;
  std::vector<double> zetas;
  double t = 0.0;
  StepPath q;
  int outer = 200;
  int inner = kDefaultInner;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Samples per nested level: the smallest n with n^M >= inner.
int per_level_samples(int inner, int M);

FreeEnergyEstimate estimate_free_energy_nested(const NestedConfig& cfg);

}  // namespace crem
