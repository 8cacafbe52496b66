#include "crem/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "crem/disorder.hpp"
#include "field_walk.hpp"
#include "crem/error.hpp"
#include "crem/numeric.hpp"
#include "crem/rng.hpp"

namespace crem {

using detail::Workspace;
using detail::base_field;
using detail::child_field;
using detail::field_coefficients;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

FreeEnergyEstimate summarize(std::vector<double> samples, Method method, std::uint64_t seed,
                             EstimateParams params) {
  FreeEnergyEstimate e;
  const auto ms = mean_stderr(samples);
  e.mean = ms.mean;
  e.std_error = ms.std_error;
  e.replicas = samples.size();
  e.method = method;
  e.seed = seed;
  e.params = std::move(params);
  e.samples = std::move(samples);
  return e;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::direct ? "direct" : "nested";
}

std::string path_id(const StepPath& q) {
  std::string out;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k) out += ';';
    out += fmt(q.zetas()[k]) + ':' + fmt(q.values()[k]);
  }
  return out;
}

void check_alignment(const StepPath& q, std::span<const double> zetas) {
  if (q.jumps() != zetas.size()) {
    throw Error(ErrorKind::grid_mismatch,
                "path has " + std::to_string(q.jumps()) + " jumps but the cascade has " +
                    std::to_string(zetas.size()) + " levels");
  }
  for (std::size_t k = 0; k < zetas.size(); ++k) {
    if (q.zetas()[k + 1] != zetas[k]) {
      throw Error(ErrorKind::grid_mismatch, "path jump " + std::to_string(k + 1) +
                                                " differs from cascade zeta");
    }
  }
}

// ---------------------------------------------------------------------------
// Direct route
// ---------------------------------------------------------------------------

double direct_replica_value(const DirectConfig& cfg, std::size_t replica) {
  const std::size_t M = cfg.zetas.size();
  const double n = static_cast<double>(cfg.N);
  const auto coef = field_coefficients(cfg.q);
  Workspace ws(cfg.N, M);
  base_field(ws, cfg.spec, cfg.N, cfg.t, coef[0], cfg.seed, replica);
  const double centering = n * cfg.t + n * cfg.q.sup_norm();

  if (M == 0) return -(log_sum_exp(ws.level[0]) - centering) / n;

  LogSumExp numerator;
  LogSumExp denominator;
  // Depth-first walk over the truncated cascade tree.
  const auto visit = [&](auto&& self, std::size_t k, std::uint64_t node,
                         double log_w) -> void {
    if (k == M) {
      numerator.add(log_w + log_sum_exp(ws.level[M]));
      denominator.add(log_w);
      return;
    }
    const auto atoms = node_log_atoms(cfg.seed, replica, static_cast<int>(k), node,
                                      cfg.zetas[k], cfg.K);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::uint64_t child = child_node(node, i);
      child_field(ws, k + 1, coef[k + 1], cfg.seed, replica, child);
      self(self, k + 1, child, log_w + atoms[i]);
    }
  };
  visit(visit, 0, 0, 0.0);
  return -(numerator.value() - denominator.value() - centering) / n;
}

FreeEnergyEstimate estimate_free_energy_direct(const DirectConfig& cfg) {
  check_depth(cfg.N);
  check_zetas(cfg.zetas);
  check_branching(cfg.K, cfg.zetas.size());
  check_alignment(cfg.q, cfg.zetas);
  if (!(cfg.t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  if (cfg.replicas == 0) throw Error(ErrorKind::domain_error, "replicas must be >= 1");

  auto samples = run_replicas(cfg.replicas, cfg.threads, [&](std::size_t r) {
    return direct_replica_value(cfg, r);
  });
  EstimateParams params{cfg.N, static_cast<int>(cfg.zetas.size()), cfg.t, path_id(cfg.q),
                        cfg.spec.id(), cfg.K, 0, 0};
  auto e = summarize(std::move(samples), Method::direct, cfg.seed, std::move(params));
  if (cfg.truncation_proxy && !cfg.zetas.empty()) {
    DirectConfig wide = cfg;
    wide.K = 2 * cfg.K;
    wide.truncation_proxy = false;
    check_branching(wide.K, wide.zetas.size());
    const auto w = run_replicas(cfg.replicas, cfg.threads, [&](std::size_t r) {
      return direct_replica_value(wide, r);
    });
    e.bias_proxy = std::abs(e.mean - mean_stderr(w).mean);
  } else if (cfg.truncation_proxy) {
    e.bias_proxy = 0.0;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Nested route
// ---------------------------------------------------------------------------

int per_level_samples(int inner, int M) {
  if (M <= 0) return 1;
  int n = static_cast<int>(std::floor(std::pow(static_cast<double>(inner), 1.0 / M)));
  n = std::max(n, 1);
  const auto reaches = [&](int v) {
    double p = 1.0;
    for (int k = 0; k < M; ++k) p *= v;
    return p >= static_cast<double>(inner);
  };
  while (n > 1 && reaches(n - 1)) --n;
  while (!reaches(n)) ++n;
  return n;
}

FreeEnergyEstimate estimate_free_energy_nested(const NestedConfig& cfg) {
  check_depth(cfg.N);
  check_zetas(cfg.zetas);
  check_alignment(cfg.q, cfg.zetas);
  const std::size_t M = cfg.zetas.size();
  if (M > static_cast<std::size_t>(kMaxNestedLevels)) {
    throw Error(ErrorKind::domain_error, "nested estimator supports M <= 2");
  }
  if (cfg.inner < kMinInner) {
    throw Error(ErrorKind::insufficient_samples,
                "inner must be >= " + std::to_string(kMinInner));
  }
  if (cfg.outer < 1) throw Error(ErrorKind::domain_error, "outer must be >= 1");
  if (!(cfg.t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");

  const int Mi = static_cast<int>(M);
  const std::size_t full = static_cast<std::size_t>(per_level_samples(cfg.inner, Mi));
  const std::size_t half =
      static_cast<std::size_t>(per_level_samples((cfg.inner + 1) / 2, Mi));
  const auto coef = field_coefficients(cfg.q);
  const double n = static_cast<double>(cfg.N);
  const double shift = cfg.t + cfg.q.sup_norm();

  using Pair = std::pair<double, double>;  // (full, half-sample) values
  auto pairs = parallel_map<Pair>(
      static_cast<std::size_t>(cfg.outer), cfg.threads, [&](std::size_t r) -> Pair {
        Workspace ws(cfg.N, M);
        base_field(ws, cfg.spec, cfg.N, cfg.t, coef[0], cfg.seed, r);
        // X_k = (1/zeta_{k+1}) log mean_i exp(zeta_{k+1} X_{k+1,i}); the
        // half-sample value reuses the first children at every level.
        const auto level = [&](auto&& self, std::size_t k, std::uint64_t node) -> Pair {
          if (k == M) {
            const double x = log_sum_exp(ws.level[M]);
            return {x, x};
          }
          const double z = cfg.zetas[k];
          LogSumExp all;
          LogSumExp first;
          for (std::size_t i = 0; i < full; ++i) {
            const std::uint64_t child = child_node(node, i);
            child_field(ws, k + 1, coef[k + 1], cfg.seed, r, child);
            const auto [x, xh] = self(self, k + 1, child);
            all.add(z * x);
            if (i < half) first.add(z * xh);
          }
          return {(all.value() - std::log(static_cast<double>(full))) / z,
                  (first.value() - std::log(static_cast<double>(half))) / z};
        };
        const auto [x0, x0h] = level(level, 0, 0);
        return {shift - x0 / n, shift - x0h / n};
      });

  std::vector<double> samples(pairs.size());
  std::vector<double> halves(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    samples[i] = pairs[i].first;
    halves[i] = pairs[i].second;
  }
  EstimateParams params{cfg.N, Mi, cfg.t, path_id(cfg.q), cfg.spec.id(), 0, cfg.inner,
                        cfg.outer};
  auto e = summarize(std::move(samples), Method::nested, cfg.seed, std::move(params));
  e.bias_proxy = M == 0 ? 0.0 : std::abs(e.mean - mean_stderr(halves).mean);
  return e;
}

}  // namespace crem
