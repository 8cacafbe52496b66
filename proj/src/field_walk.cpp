#include "field_walk.hpp"

#include <algorithm>
#include <cmath>

#include "crem/disorder.hpp"
#include "crem/rng.hpp"

namespace crem::detail {

// sqrt(2 (q_k - q_{k-1})) with q_{-1} = 0.
std::vector<double> field_coefficients(const StepPath& q) {
  std::vector<double> c(q.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    c[k] = std::sqrt(2.0 * (q.values()[k] - prev));
    prev = q.values()[k];
  }
  return c;
}

// Writes sqrt(2t) H + sqrt(2 q_0) z^(0) into ws.level[0].
void base_field(Workspace& ws, const CovarianceSpec& spec, int N, double t,
                double coef0, std::uint64_t seed, std::size_t replica) {
  auto& out = ws.level[0];
  std::fill(out.begin(), out.end(), 0.0);
  if (t > 0.0) {
    StreamEngine eng(seed, StreamKey{replica, 0, 0, Purpose::hamiltonian});
    tree_field(ws.field, level_scales(spec, N), eng, ws.scratch);
    const double a = std::sqrt(2.0 * t);
    for (std::size_t s = 0; s < ws.leaves; ++s) out[s] += a * ws.field[s];
  }
  if (coef0 > 0.0) {
    StreamEngine eng(seed, StreamKey{replica, 0, 0, Purpose::field});
    tree_field(ws.field, ws.unit, eng, ws.scratch);
    for (std::size_t s = 0; s < ws.leaves; ++s) out[s] += coef0 * ws.field[s];
  }
}

// ws.level[k] = ws.level[k-1] + coef * z, z the BRW attached to cascade node.
void child_field(Workspace& ws, std::size_t k, double coef, std::uint64_t seed,
                 std::size_t replica, std::uint64_t node) {
  const auto& parent = ws.level[k - 1];
  auto& out = ws.level[k];
  if (coef == 0.0) {
    out = parent;
    return;
  }
  StreamEngine eng(seed, StreamKey{replica, static_cast<std::uint32_t>(k), node,
                                   Purpose::field});
  tree_field(ws.field, ws.unit, eng, ws.scratch);
  for (std::size_t s = 0; s < ws.leaves; ++s) out[s] = parent[s] + coef * ws.field[s];
}

}  // namespace crem::detail
