#include "crem/overlaps.hpp"

#include <algorithm>
#include <cmath>
#include <boost/random/normal_distribution.hpp>

#include "crem/disorder.hpp"
#include "crem/error.hpp"
#include "crem/estimators.hpp"
#include "crem/numeric.hpp"
#include "crem/rng.hpp"
#include "field_walk.hpp"

namespace crem {

namespace {

constexpr double kMaxGibbsEntries = static_cast<double>(std::size_t{1} << 26);

// sum over tree nodes v at each depth i of m(v)^2, where m(v) sums the leaf
// masses below v. Returns S(0..N); m is consumed.
std::vector<double> squared_masses_by_depth(std::vector<double> m, int N) {
  std::vector<double> s(static_cast<std::size_t>(N) + 1);
  std::size_t width = m.size();
  for (int i = N;; --i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += m[j] * m[j];
    s[static_cast<std::size_t>(i)] = acc;
    if (i == 0) break;
    width /= 2;
    for (std::size_t j = 0; j < width; ++j) m[j] = m[2 * j] + m[2 * j + 1];
  }
  return s;
}

ScalarEstimate to_estimate(std::vector<double> samples) {
  const auto ms = mean_stderr(samples);
  return {ms.mean, ms.std_error, samples.size(), std::move(samples)};
}

}  // namespace

std::vector<double> gibbs_replica_moments(const OverlapConfig& cfg, std::size_t replica) {
  const std::size_t M = cfg.zetas.size();
  const std::size_t leaves = std::size_t{1} << cfg.N;
  const auto coef = detail::field_coefficients(cfg.q);
  detail::Workspace ws(cfg.N, M);
  detail::base_field(ws, cfg.spec, cfg.N, cfg.t, coef[0], cfg.seed, replica);

  // Gibbs exponents log v_alpha + H(sigma, alpha), alpha-major.
  std::vector<double> table;
  const auto visit = [&](auto&& self, std::size_t k, std::uint64_t node,
                         double log_w) -> void {
    if (k == M) {
      for (double h : ws.level[M]) table.push_back(log_w + h);
      return;
    }
    const auto atoms = node_log_atoms(cfg.seed, replica, static_cast<int>(k), node,
                                      cfg.zetas[k], cfg.K);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::uint64_t child = child_node(node, i);
      detail::child_field(ws, k + 1, coef[k + 1], cfg.seed, replica, child);
      self(self, k + 1, child, log_w + atoms[i]);
    }
  };
  visit(visit, 0, 0, 0.0);

  const double log_z = log_sum_exp(table);
  for (double& x : table) x = std::exp(x - log_z);
  const std::size_t alphas = table.size() / leaves;

  // S[k][i] = sum over alpha-groups at depth k and sigma-nodes at depth i of
  // the squared joint mass.
  std::vector<std::vector<double>> S;
  std::size_t group = alphas;
  for (std::size_t k = 0; k <= M; ++k) {
    std::vector<double> acc(static_cast<std::size_t>(cfg.N) + 1, 0.0);
    for (std::size_t g0 = 0; g0 < alphas; g0 += group) {
      std::vector<double> m(leaves, 0.0);
      for (std::size_t a = g0; a < g0 + group; ++a) {
        const double* row = table.data() + a * leaves;
        for (std::size_t s = 0; s < leaves; ++s) m[s] += row[s];
      }
      const auto sq = squared_masses_by_depth(std::move(m), cfg.N);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sq[i];
    }
    S.push_back(std::move(acc));
    if (k < M) group /= static_cast<std::size_t>(cfg.K);
  }

  const double n = static_cast<double>(cfg.N);
  std::vector<double> out(M + 2, 0.0);
  // P(R >= i/N) = S[0][i].
  for (int i = 0; i <= cfg.N; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double above = i == cfg.N ? 0.0 : S[0][ui + 1];
    out[0] += (S[0][ui] - above) * cfg.spec(i == cfg.N ? 1.0 : i / n);
  }
  for (std::size_t k = 0; k <= M; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= cfg.N; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      acc += S[k][ui] - (k < M ? S[k + 1][ui] : 0.0);
    }
    out[k + 1] = acc / n;
  }
  return out;
}

OverlapMoments gibbs_overlap_moments(const OverlapConfig& cfg) {
  if (cfg.N < 1 || cfg.N > kMaxOverlapDepth) {
    throw Error(ErrorKind::depth_too_large, "overlap enumeration needs 1 <= N <= 12");
  }
  check_zetas(cfg.zetas);
  check_branching(cfg.K, cfg.zetas.size());
  check_alignment(cfg.q, cfg.zetas);
  if (!(cfg.t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  if (cfg.replicas == 0) throw Error(ErrorKind::domain_error, "replicas must be >= 1");
  if (std::pow(static_cast<double>(cfg.K), static_cast<double>(cfg.zetas.size())) *
          std::ldexp(1.0, cfg.N) >
      kMaxGibbsEntries) {
    throw Error(ErrorKind::branching_too_large, "Gibbs table K^M 2^N too large");
  }

  const auto rows = parallel_map<std::vector<double>>(
      cfg.replicas, cfg.threads,
      [&](std::size_t r) { return gibbs_replica_moments(cfg, r); });

  OverlapMoments out;
  out.replicas = rows.size();
  const std::size_t width = rows.front().size();
  std::vector<double> column(rows.size());
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][c];
    const auto ms = mean_stderr(column);
    if (c == 0) {
      out.dF_dt = ms.mean;
      out.dF_dt_err = ms.std_error;
      out.dF_dt_samples = column;
    } else {
      out.dF_dq.push_back(ms.mean);
      out.dF_dq_err.push_back(ms.std_error);
    }
  }
  return out;
}

ScalarEstimate brw_max_estimate(int N, std::size_t replicas, std::uint64_t seed,
                                unsigned threads) {
  check_depth(N);
  if (replicas == 0) throw Error(ErrorKind::domain_error, "replicas must be >= 1");
  auto samples = run_replicas(replicas, threads, [&](std::size_t r) {
    const auto z = sample_brw(N, seed, StreamKey{r, 0, 0, Purpose::brw}).leaf_values();
    return *std::max_element(z.begin(), z.end()) / static_cast<double>(N);
  });
  return to_estimate(std::move(samples));
}

CascadeFunctionalEstimate cascade_functional_estimate(std::span<const double> zetas, int K,
                                                      std::size_t replicas,
                                                      std::uint64_t seed,
                                                      unsigned threads) {
  check_zetas(zetas);
  check_branching(K, zetas.size());
  check_branching(2 * K, zetas.size());
  if (replicas == 0) throw Error(ErrorKind::domain_error, "replicas must be >= 1");
  const auto level = static_cast<std::uint32_t>(zetas.size());
  const auto run = [&](int branching) {
    return run_replicas(replicas, threads, [&](std::size_t r) {
      const auto c = sample_cascade(zetas, branching, seed, r);
      std::vector<double> g(c.leaf_ids.size());
      for (std::size_t a = 0; a < g.size(); ++a) {
        StreamEngine eng(seed, StreamKey{r, level, c.leaf_ids[a], Purpose::functional});
        g[a] = boost::random::normal_distribution<double>()(eng);
      }
      return c.log_average(g);
    });
  };
  CascadeFunctionalEstimate out;
  out.estimate = to_estimate(run(K));
  out.truncation_proxy = std::abs(out.estimate.mean - mean_stderr(run(2 * K)).mean);
  return out;
}

}  // namespace crem
