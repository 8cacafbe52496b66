#pragma once

#include <cstdint>
#include <vector>

#include "crem/covariance.hpp"
#include "crem/paths.hpp"

namespace crem::detail {

// sqrt(2 (q_k - q_{k-1})) with q_{-1} = 0.
std::vector<double> field_coefficients(const StepPath& q);

// Buffers shared by one replica's tree traversal.
struct Workspace {
  std::size_t leaves;
  std::vector<std::vector<double>> level;  // field sums at each cascade depth
  std::vector<double> field;
  std::vector<double> scratch;
  std::vector<double> unit;

  Workspace(int N, std::size_t depth)
      : leaves(std::size_t{1} << N),
        level(depth + 1, std::vector<double>(leaves)),
        field(leaves),
        scratch(leaves),
        unit(static_cast<std::size_t>(N), 1.0) {}
};

// Writes sqrt(2t) H + sqrt(2 q_0) z^(0) into ws.level[0].
void base_field(Workspace& ws, const CovarianceSpec& spec, int N, double t, double coef0,
                std::uint64_t seed, std::size_t replica);

// ws.level[k] = ws.level[k-1] + coef * z, z the BRW attached to cascade node.
void child_field(Workspace& ws, std::size_t k, double coef, std::uint64_t seed,
                 std::size_t replica, std::uint64_t node);

}  // namespace crem::detail
