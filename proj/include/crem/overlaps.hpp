#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crem/cascade.hpp"
#include "crem/covariance.hpp"
#include "crem/paths.hpp"

namespace crem {

/// Exact leaf enumeration limit for the two-replica Gibbs averages.
inline constexpr int kMaxOverlapDepth = 12;

struct OverlapConfig {
  CovarianceSpec spec;
  int N = 1;
  std::vector<double> zetas;
  int K = kDefaultBranching;
  double t = 0.0;
  StepPath q;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct OverlapMoments {
  double dF_dt = 0.0;
  double dF_dt_err = 0.0;
  std::vector<double> dF_dq;      // k = 0..M
  std::vector<double> dF_dq_err;
  std::size_t replicas = 0;
  std::vector<double> dF_dt_samples;
};

/// Per-disorder Gibbs averages: E<A(R)> and E<1{a ^ a' = k} R>, R the
/// normalized sigma overlap; entries 1.. of the result are the dF_dq values.
std::vector<double> gibbs_replica_moments(const OverlapConfig& cfg, std::size_t replica);

OverlapMoments gibbs_overlap_moments(const OverlapConfig& cfg);

struct ScalarEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replicas = 0;
  std::vector<double> samples;
};

/// Mean of max_sigma z(sigma)/N over BRW replicas.
ScalarEstimate brw_max_estimate(int N, std::size_t replicas, std::uint64_t seed,
                                unsigned threads = 1);

struct CascadeFunctionalEstimate {
  ScalarEstimate estimate;
  /// |estimate(K) - estimate(2K)| on the same randomness.
  double truncation_proxy = 0.0;
};

/// E log sum_alpha v_alpha exp(g_alpha) with g_alpha i.i.d. standard normal.
CascadeFunctionalEstimate cascade_functional_estimate(std::span<const double> zetas, int K,
                                                      std::size_t replicas,
                                                      std::uint64_t seed,
                                                      unsigned threads = 1);

}  // namespace crem
