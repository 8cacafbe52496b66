#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace crem {

inline constexpr int kMaxCascadeDepth = 3;
inline constexpr std::size_t kMaxCascadeLeaves = std::size_t{1} << 24;
inline constexpr int kDefaultBranching = 200;

/// Truncated Ruelle cascade: every node keeps its K largest Poisson atoms.
struct CascadeApprox {
  int depth = 0;
  std::vector<double> zetas;  // zeta_1 < ... < zeta_M
  int branching = 0;
  /// log_atoms[k-1] holds the K^k level-k atoms, children of node n at
  /// positions n*K .. n*K + K - 1 (decreasing within each block).
  std::vector<std::vector<double>> log_atoms;
  /// Normalized log v_alpha over the K^M leaves.
  std::vector<double> log_weights;
  /// Stable node identifiers of the leaves (shared across truncation levels).
  std::vector<std::uint64_t> leaf_ids;

  std::vector<double> weights() const;
  /// log sum_alpha v_alpha exp(f_alpha).
  double log_average(std::span<const double> f) const;
};

/// Error(bad_zetas) unless 0 < zeta_1 < ... < zeta_M < 1 and M <= 3.
void check_zetas(std::span<const double> zetas);

/// log of the K largest atoms Gamma_i^{-1/zeta} of a Poisson process with
/// intensity zeta y^{-1-zeta} dy, from the node's own atom stream.
std::vector<double> node_log_atoms(std::uint64_t seed, std::uint64_t replica, int level,
                                   std::uint64_t node, double zeta, int K);

/// Error(branching_too_large) when K < 2 or K^M exceeds kMaxCascadeLeaves.
void check_branching(int K, std::size_t M);

CascadeApprox sample_cascade(std::span<const double> zetas, int K, std::uint64_t seed,
                             std::uint64_t replica = 0);

}  // namespace crem
