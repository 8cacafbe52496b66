#include "crem/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crem/error.hpp"
#include "crem/numeric.hpp"
#include "crem/rng.hpp"

namespace crem {

void check_zetas(std::span<const double> zetas) {
  if (zetas.size() > static_cast<std::size_t>(kMaxCascadeDepth)) {
    throw Error(ErrorKind::bad_zetas,
                "at most " + std::to_string(kMaxCascadeDepth) + " cascade levels");
  }
  for (std::size_t k = 0; k < zetas.size(); ++k) {
    const double lower = k == 0 ? 0.0 : zetas[k - 1];
    if (!(zetas[k] > lower && zetas[k] < 1.0)) {
      throw Error(ErrorKind::bad_zetas,
                  "zetas must satisfy 0 < zeta_1 < ... < zeta_M < 1");
    }
  }
}

void check_branching(int K, std::size_t M) {
  if (K < 2) throw Error(ErrorKind::branching_too_large, "K must be >= 2");
  double leaves = 1.0;
  for (std::size_t k = 0; k < M; ++k) leaves *= K;
  if (leaves > static_cast<double>(kMaxCascadeLeaves)) {
    throw Error(ErrorKind::branching_too_large,
                "K^M exceeds " + std::to_string(kMaxCascadeLeaves) + " leaves");
  }
}

std::vector<double> node_log_atoms(std::uint64_t seed, std::uint64_t replica, int level,
                                   std::uint64_t node, double zeta, int K) {
  StreamEngine eng(seed, StreamKey{replica, static_cast<std::uint32_t>(level), node,
                                   Purpose::atoms});
  std::vector<double> out(static_cast<std::size_t>(K));
  double gamma = 0.0;
  for (double& a : out) {
    gamma -= std::log(eng.uniform_open());
    a = -std::log(gamma) / zeta;
  }
  return out;
}

CascadeApprox sample_cascade(std::span<const double> zetas, int K, std::uint64_t seed,
                             std::uint64_t replica) {
  check_zetas(zetas);
  check_branching(K, zetas.size());
  CascadeApprox c;
  c.depth = static_cast<int>(zetas.size());
  c.zetas.assign(zetas.begin(), zetas.end());
  c.branching = K;

  const std::size_t k_children = static_cast<std::size_t>(K);
  std::vector<std::uint64_t> ids{0};
  std::vector<double> log_w{0.0};
  for (std::size_t k = 0; k < zetas.size(); ++k) {
    std::vector<std::uint64_t> next_ids(ids.size() * k_children);
    std::vector<double> atoms(ids.size() * k_children);
    std::vector<double> next_w(atoms.size());
    for (std::size_t n = 0; n < ids.size(); ++n) {
      const auto a = node_log_atoms(seed, replica, static_cast<int>(k), ids[n], zetas[k], K);
      for (std::size_t i = 0; i < k_children; ++i) {
        const std::size_t pos = n * k_children + i;
        atoms[pos] = a[i];
        next_w[pos] = log_w[n] + a[i];
        next_ids[pos] = child_node(ids[n], i);
      }
    }
    c.log_atoms.push_back(std::move(atoms));
    ids = std::move(next_ids);
    log_w = std::move(next_w);
  }
  const double norm = log_sum_exp(log_w);
  for (double& w : log_w) w -= norm;
  c.log_weights = std::move(log_w);
  c.leaf_ids = std::move(ids);
  return c;
}

std::vector<double> CascadeApprox::weights() const {
  std::vector<double> out(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), out.begin(),
                 [](double lw) { return std::exp(lw); });
  return out;
}

double CascadeApprox::log_average(std::span<const double> f) const {
  if (f.size() != log_weights.size()) {
    throw Error(ErrorKind::domain_error, "functional size differs from leaf count");
  }
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = log_weights[i] + f[i];
  return log_sum_exp(terms);
}

}  // namespace crem
