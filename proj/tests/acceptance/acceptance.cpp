// Acceptance gate: one PASS/FAIL line per criterion. Every tolerance and
// seed below is pinned; `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "crem/analytic.hpp"
#include "crem/covariance.hpp"
#include "crem/estimators.hpp"
#include "crem/numeric.hpp"
#include "crem/overlaps.hpp"
#include "crem/paths.hpp"

namespace {

using crem::CovarianceSpec;
using crem::StepPath;

constexpr double kLn2 = std::numbers::ln2;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double combined(double a, double b) { return std::hypot(a, b); }

StepPath to_step(const oracle::Path& p) { return StepPath(p.zetas, p.values); }

Outcome closed_forms() {
  constexpr double kTolHopf = 1e-8;
  constexpr double kTolBk = 1e-8;
  constexpr double kTolRem = 1e-10;
  double hopf = 0, bk = 0, rem = 0;
  for (int i = 0; i < 200; ++i) {
    const double t = 4.0 * i / 199;
    hopf = std::max(hopf, std::abs(crem::hopf_free_energy(t, StepPath()).value - crem::f_t0_closed(t)));
    if (t > 0) {
      bk = std::max(bk, std::abs(crem::bovier_kurkova(CovarianceSpec::identity(), t) -
                                 crem::f_t0_closed(t)));
    }
    const double beta = 3.0 * i / 199;
    const double via = -crem::hopf_free_energy(beta * beta / 2, StepPath()).value + beta * beta / 2;
    rem = std::max(rem, std::abs(crem::rem_beta_free_energy(beta) - via));
  }
  return {hopf <= kTolHopf && bk <= kTolBk && rem <= kTolRem,
          fmt("max|hopf-f|=%.2e max|bk-f|=%.2e max|rem|=%.2e", hopf, bk, rem)};
}

Outcome initial_condition() {
  constexpr double kTol = 1e-9;
  std::mt19937_64 rng(2002);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const StepPath q = to_step(oracle::random_path(rng, 5, 10.0));
    worst = std::max(worst, std::abs(crem::hopf_free_energy(0, q).value - crem::psi(q)));
  }
  return {worst <= kTol, fmt("max|hopf(0,q)-psi(q)|=%.2e over 100 paths", worst)};
}

Outcome duality() {
  constexpr double kTol = 1e-4;
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    oracle::Path shape;
    double l1 = 0;
    while (l1 == 0) {
      shape = oracle::random_path(rng, 4, 1.0);
      for (std::size_t k = 0; k < shape.zetas.size(); ++k) {
        const double end = k + 1 < shape.zetas.size() ? shape.zetas[k + 1] : 1.0;
        l1 += shape.values[k] * (end - shape.zetas[k]);
      }
    }
    const double target = 0.95 * unit(rng);
    for (double& v : shape.values) v = std::min(1.0, v * target / l1);
    const StepPath p = to_step(shape);
    const double m = p.l1_norm();
    const double brute = oracle::legendre_constant_paths(m, 4 * kLn2 / ((1 - m) * (1 - m)));
    worst = std::max(worst, std::abs(crem::psi_star(p) - brute));
  }
  return {worst <= kTol, fmt("max|psi*-bruteforce|=%.2e over 50 p", worst)};
}

Outcome universality() {
  constexpr double kTol = 1e-4;
  double worst = 0;
  for (double t : {0.5, kLn2, 2 * kLn2, 4 * kLn2}) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& spec :
         {CovarianceSpec::identity(), CovarianceSpec::power(2), CovarianceSpec::power(4)}) {
      const double v = crem::hopf_general(spec, t, StepPath()).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  return {worst < kTol, fmt("max spread=%.2e", worst)};
}

Outcome two_speed() {
  constexpr double kTolNumeric = 1e-6;
  constexpr double kMinGap = 0.05;
  const double theta = 2, c = 0.25;
  const auto spec = CovarianceSpec::two_speed(theta, c);
  double dev = 0, order = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 200; ++i) {
    const double t = 4.0 * i / 200;
    const double var = crem::two_speed_f_var(theta, c, t);
    dev = std::max(dev, std::abs(var - crem::f_var_numeric(spec, t)));
    order = std::max(order, crem::two_speed_f_crem(theta, c, t) - var);
  }
  const double gap = crem::two_speed_f_var(theta, c, kLn2) - crem::two_speed_f_crem(theta, c, kLn2);
  return {dev <= kTolNumeric && order <= 0 && gap >= kMinGap,
          fmt("max|closed-numeric|=%.2e max(f_crem-f_var)=%.2e gap(log2)=%.4f", dev, order, gap)};
}

Outcome mc_convergence() {
  constexpr double kTolLimit = 0.15;
  const double t = 2 * kLn2;
  const double limit = crem::f_t0_closed(t);
  std::vector<double> dev, se;
  std::string detail;
  for (int N : {8, 12, 16, 20}) {
    crem::DirectConfig cfg;
    cfg.N = N;
    cfg.t = t;
    cfg.replicas = 200;
    cfg.seed = 6006 + static_cast<std::uint64_t>(N);
    const auto e = crem::estimate_free_energy_direct(cfg);
    dev.push_back(std::abs(e.mean - limit));
    se.push_back(e.std_error);
    detail += fmt("N=%.0f F=%.4f+-%.4f ", N, e.mean, e.std_error);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < dev.size(); ++i) {
    monotone = monotone && dev[i] <= dev[i - 1] + combined(se[i - 1], se[i]);
  }
  detail += fmt("| |F20-limit|=%.4f (tol %.2f) limit=%.6f", dev.back(), kTolLimit, limit);
  return {dev.back() <= kTolLimit && monotone, detail + (monotone ? "" : " non-monotone")};
}

Outcome method_equivalence() {
  struct Cell {
    int N;
    std::vector<double> zetas;
    StepPath q;
    std::size_t direct_replicas;
  };
  const std::vector<Cell> cells{
      {4, {0.5}, StepPath({0, 0.5}, {0, 1}), 200},
      {6, {0.5}, StepPath({0, 0.5}, {0, 1}), 200},
      {4, {1.0 / 3, 2.0 / 3}, StepPath({0, 1.0 / 3, 2.0 / 3}, {0, 0.5, 1}), 100},
      {6, {1.0 / 3, 2.0 / 3}, StepPath({0, 1.0 / 3, 2.0 / 3}, {0, 0.5, 1}), 100},
  };
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 7007;
  for (const auto& cell : cells) {
    crem::DirectConfig d;
    d.N = cell.N;
    d.zetas = cell.zetas;
    d.K = 400;
    d.t = 0.5;
    d.q = cell.q;
    d.replicas = cell.direct_replicas;
    d.seed = seed++;
    crem::NestedConfig n;
    n.N = cell.N;
    n.zetas = cell.zetas;
    n.t = 0.5;
    n.q = cell.q;
    n.outer = 200;
    n.inner = 10000;
    n.seed = seed++;
    const auto a = crem::estimate_free_energy_direct(d);
    const auto b = crem::estimate_free_energy_nested(n);
    const double z = std::abs(a.mean - b.mean) / combined(a.std_error, b.std_error);
    ok = ok && z <= 3.0;
    detail += fmt("N=%.0f M=%.0f |diff|/se=%.2f ", cell.N, double(cell.zetas.size()), z);
  }
  return {ok, detail};
}

Outcome cascade_identity() {
  const std::vector<double> half{0.5};
  const auto f = crem::cascade_functional_estimate(half, 400, 10000, 8008);
  const double z = std::abs(f.estimate.mean - 0.25) / f.estimate.std_error;
  return {z <= 3.0, fmt("estimate=%.5f+-%.5f |diff|/se=%.2f trunc=%.1e", f.estimate.mean,
                        f.estimate.std_error, z, f.truncation_proxy)};
}

Outcome comparison_lipschitz() {
  bool ok = true;
  double worst_cmp = -std::numeric_limits<double>::infinity();
  for (double t : {0.5, 1.5}) {
    for (const StepPath& q : {StepPath({0, 0.5}, {0, 0}), StepPath({0, 0.5}, {0, 1})}) {
      crem::DirectConfig cfg;
      cfg.N = 12;
      cfg.zetas = {0.5};
      cfg.K = 100;
      cfg.t = t;
      cfg.q = q;
      cfg.replicas = 100;
      cfg.seed = 9009;
      cfg.spec = CovarianceSpec::power(2);
      const auto low = crem::estimate_free_energy_direct(cfg);
      cfg.spec = CovarianceSpec::identity();
      const auto high = crem::estimate_free_energy_direct(cfg);
      const double excess = low.mean - high.mean - 3 * combined(low.std_error, high.std_error);
      worst_cmp = std::max(worst_cmp, excess);
      ok = ok && excess <= 0;
    }
  }
  std::mt19937_64 rng(9010);
  std::uniform_real_distribution<double> level(0.0, 2.0);
  double worst_lip = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const auto draw = [&] {
      double a = level(rng), b = level(rng);
      if (a > b) std::swap(a, b);
      return StepPath({0, 0.5}, {a, b});
    };
    const StepPath q = draw(), r = draw();
    crem::DirectConfig cfg;
    cfg.N = 8;
    cfg.zetas = {0.5};
    cfg.K = 100;
    cfg.t = 1.0;
    cfg.replicas = 100;
    cfg.seed = 9100 + static_cast<std::uint64_t>(i);
    cfg.q = q;
    const auto fq = crem::estimate_free_energy_direct(cfg);
    cfg.q = r;
    const auto fr = crem::estimate_free_energy_direct(cfg);
    const double excess = std::abs(fq.mean - fr.mean) - crem::l1_distance(q, r) -
                          3 * combined(fq.std_error, fr.std_error);
    worst_lip = std::max(worst_lip, excess);
    ok = ok && excess <= 0;
  }
  return {ok, fmt("max comparison excess=%.4f max Lipschitz excess=%.4f (both must be <= 0)",
                  worst_cmp, worst_lip)};
}

Outcome derivatives() {
  constexpr double kTolExact = 1e-12;
  crem::OverlapConfig g0;
  g0.N = 4;
  g0.replicas = 2;
  g0.seed = 1010;
  const double exact = 0.234375;
  const double at0 = crem::gibbs_overlap_moments(g0).dF_dt;

  crem::OverlapConfig g;
  g.N = 8;
  g.t = 1.0;
  g.replicas = 2000;
  g.seed = 1011;
  const auto gm = crem::gibbs_overlap_moments(g);
  const double h = 1e-2;
  crem::DirectConfig d;
  d.N = 8;
  d.replicas = 2000;
  d.seed = 1012;
  d.t = 1 + h;
  const auto up = crem::estimate_free_energy_direct(d);
  d.t = 1 - h;
  const auto down = crem::estimate_free_energy_direct(d);
  std::vector<double> fd(up.samples.size());
  for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (up.samples[i] - down.samples[i]) / (2 * h);
  const auto s = crem::mean_stderr(fd);
  const double z = std::abs(gm.dF_dt - s.mean) / combined(gm.dF_dt_err, s.std_error);
  return {std::abs(at0 - exact) <= kTolExact && z <= 3.0,
          fmt("N=4,t=0: %.12f; N=8,t=1: gibbs=%.5f fd=%.5f |diff|/se=%.2f", at0, gm.dF_dt, s.mean, z)};
}

Outcome brw_shape() {
  constexpr double kLow = 1.00;
  constexpr double kHigh = 1.18;
  const auto b20 = crem::brw_max_estimate(20, 200, 1111);
  const auto b8 = crem::brw_max_estimate(8, 200, 1108);
  return {b20.mean >= kLow && b20.mean <= kHigh && b20.mean > b8.mean,
          fmt("N=20: %.4f+-%.4f (need [1.00,1.18]); N=8: %.4f", b20.mean, b20.std_error, b8.mean)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "closed-form agreement", closed_forms},
      {2, "initial-condition consistency", initial_condition},
      {3, "duality", duality},
      {4, "universality in the weak regime", universality},
      {5, "two-speed counterexample", two_speed},
      {6, "Monte Carlo convergence", mc_convergence},
      {7, "method equivalence", method_equivalence},
      {8, "cascade identity", cascade_identity},
      {9, "Gaussian comparison and Lipschitz", comparison_lipschitz},
      {10, "derivative identities", derivatives},
      {11, "BRW shape", brw_shape},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
