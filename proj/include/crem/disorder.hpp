#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crem/covariance.hpp"
#include "crem/rng.hpp"

namespace crem {

/// Largest tree depth the samplers accept (2^N leaves are materialized).
inline constexpr int kMaxDepth = 26;

/// Per-level standard deviations sqrt(N (A(i/N) - A((i-1)/N))), i = 1..N.
std::vector<double> level_scales(const CovarianceSpec& spec, int N);

/// Gaussian field on a depth-N binary tree. Standard draws are stored in
/// heap layout: the 2^i nodes of level i start at offset 2^i - 2.
class DisorderSample {
 public:
  DisorderSample(int depth, std::vector<double> draws, std::vector<double> scales);

  int depth() const noexcept { return depth_; }
  std::span<const double> draws() const noexcept { return draws_; }
  std::span<const double> scales() const noexcept { return scales_; }

  /// Scaled increment of node `index` (0-based, left to right) at level i >= 1.
  double increment(int level, std::size_t index) const;

  /// H(sigma) for the 2^N leaves in lexicographic order (bit i-1 from the
  /// left is the level-i branch).
  std::vector<double> leaf_values() const;

 private:
  int depth_;
  std::vector<double> draws_;
  std::vector<double> scales_;
};

/// Writes the leaf values of a fresh tree field with the given per-level
/// scales into out (size 2^N). Consumes draws level by level, left to right,
/// exactly as DisorderSample stores them. scratch must hold 2^N doubles.
void tree_field(std::span<double> out, std::span<const double> scales, StreamEngine& eng,
                std::span<double> scratch);

/// Branching random walk: unit-variance increments, Cov(z(s), z(s')) = s ^ s'.
DisorderSample sample_brw(int N, std::uint64_t seed, const StreamKey& key = {});

/// CREM Hamiltonian with Cov = N A(s ^ s' / N) on the grid i/N.
DisorderSample sample_crem(const CovarianceSpec& spec, int N, std::uint64_t seed,
                           const StreamKey& key = {});

/// Error(depth_too_large) unless 1 <= N <= kMaxDepth (0 allowed when allow_zero).
void check_depth(int N, bool allow_zero = false);

}  // namespace crem
