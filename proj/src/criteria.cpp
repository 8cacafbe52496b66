#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "crem/analytic.hpp"
#include "crem/estimators.hpp"
#include "crem/numeric.hpp"
#include "crem/overlaps.hpp"
#include "crem/rng.hpp"

namespace crem::criteria {

namespace {

constexpr double kLog2 = std::numbers::ln2;

std::uint64_t seed_for(const SuiteOptions& opts, std::uint64_t pinned) {
  return opts.seed_override ? splitmix64(*opts.seed_override ^ pinned) : pinned;
}

CheckRecord near(std::string name, double expected, double observed, double tol,
                 std::string provenance, std::string detail = {}) {
  const bool ok = std::abs(observed - expected) <= tol;
  return {std::move(name), expected, observed, tol, std::move(provenance), ok,
          std::move(detail)};
}

// Passes when observed <= bound.
CheckRecord at_most(std::string name, double bound, double observed,
                    std::string provenance, std::string detail = {}) {
  return {std::move(name), bound, observed, 0.0, std::move(provenance), observed <= bound,
          std::move(detail)};
}

// Passes when observed >= bound.
CheckRecord at_least(std::string name, double bound, double observed,
                     std::string provenance, std::string detail = {}) {
  return {std::move(name), bound, observed, 0.0, std::move(provenance), observed >= bound,
          std::move(detail)};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

// Random path with M <= max_jumps, q_M <= max_level.
StepPath random_path(StreamEngine& eng, int max_jumps, double max_level) {
  const int M = static_cast<int>(eng() % static_cast<std::uint64_t>(max_jumps + 1));
  std::vector<double> zetas{0.0};
  std::vector<double> values;
  std::vector<double> u(static_cast<std::size_t>(M));
  for (double& x : u) x = eng.uniform_open();
  std::sort(u.begin(), u.end());
  for (double x : u) {
    if (x > zetas.back()) zetas.push_back(x);
  }
  values.resize(zetas.size());
  for (double& v : values) v = max_level * eng.uniform_open();
  std::sort(values.begin(), values.end());
  return StepPath(std::move(zetas), std::move(values));
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

std::vector<CheckRecord> closed_forms(const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  double hopf_dev = 0.0;
  double bk_dev = 0.0;
  for (double t : linspace(0.0, 4.0, 200)) {
    hopf_dev = std::max(hopf_dev, std::abs(hopf_free_energy(t, StepPath()).value - f_t0_closed(t)));
    if (t > 0.0) {
      bk_dev = std::max(bk_dev,
                        std::abs(bovier_kurkova(CovarianceSpec::identity(), t) - f_t0_closed(t)));
    }
  }
  out.push_back(near("hopf_q0_vs_closed_form", 0.0, hopf_dev, 1e-8, "exact",
                     "max deviation over 200 t in [0,4]"));
  out.push_back(near("bovier_kurkova_identity_vs_closed_form", 0.0, bk_dev, 1e-8, "exact",
                     "max deviation over 199 t in (0,4]"));

  double rem_dev = 0.0;
  for (double beta : linspace(0.0, 3.0, 200)) {
    const double via_hopf = -hopf_free_energy(0.5 * beta * beta, StepPath()).value +
                            0.5 * beta * beta;
    rem_dev = std::max(rem_dev, std::abs(rem_beta_free_energy(beta) - via_hopf));
  }
  out.push_back(near("rem_beta_reparametrization", 0.0, rem_dev, 1e-10, "exact",
                     "max deviation over 200 beta in [0,3]"));

  StreamEngine eng(seed_for(opts, 0x1C0FFEE), StreamKey{});
  double ic_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const StepPath q = random_path(eng, 5, 10.0);
    ic_dev = std::max(ic_dev, std::abs(hopf_free_energy(0.0, q).value - psi(q)));
  }
  out.push_back(near("initial_condition_random_paths", 0.0, ic_dev, 1e-9, "derived",
                     "max |hopf(0,q) - psi(q)| over 100 random paths"));
  out.push_back(near("psi_constant_4log2", 0.0, psi(StepPath::constant(4 * kLog2)), 1e-12,
                     "exact"));
  return out;
}

std::vector<CheckRecord> duality(const SuiteOptions& opts) {
  StreamEngine eng(seed_for(opts, 0xD0A1), StreamKey{});
  double dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    StepPath shape = random_path(eng, 4, 1.0);
    const double target = 0.95 * eng.uniform_open();
    const double scale = shape.l1_norm() > 0.0 ? target / shape.l1_norm() : 0.0;
    std::vector<double> values(shape.values().begin(), shape.values().end());
    for (double& v : values) v = std::min(1.0, v * scale);
    const StepPath p(std::vector<double>(shape.zetas().begin(), shape.zetas().end()), values);
    const double norm = p.l1_norm();
    // Brute-force sup over constant q = c on a 10^4-point grid.
    const double c_max = 4.0 * kLog2 / ((1.0 - norm) * (1.0 - norm));
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 10000; ++j) {
      const double c = c_max * j / 9999.0;
      best = std::max(best, c * norm - psi(StepPath::constant(c)));
    }
    dev = std::max(dev, std::abs(psi_star(p) - best));
  }
  std::vector<CheckRecord> out;
  out.push_back(near("psi_star_vs_bruteforce_sup", 0.0, dev, 1e-4, "derived",
                     "max deviation over 50 random p with |p|_1 < 0.95"));
  out.push_back(near("psi_star_outside_domain_infinite", 1.0,
                     std::isinf(psi_star(StepPath::constant(1.5))) ? 1.0 : 0.0, 0.0, "exact"));
  return out;
}

std::vector<CheckRecord> universality(const SuiteOptions&) {
  std::vector<CheckRecord> out;
  const std::vector<CovarianceSpec> specs{CovarianceSpec::identity(), CovarianceSpec::power(2),
                                          CovarianceSpec::power(4)};
  for (double t : {0.5, kLog2, 2 * kLog2, 4 * kLog2}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : specs) {
      const double v = hopf_general(s, t, StepPath()).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.push_back(near("hopf_general_spread_t=" + format_double(t), 0.0, hi - lo, 1e-4,
                       "derived", "identity, power 2, power 4 at q = 0"));
  }
  return out;
}

std::vector<CheckRecord> two_speed_gap(const SuiteOptions&) {
  const double theta = 2.0;
  const double c = 0.25;
  const auto spec = CovarianceSpec::two_speed(theta, c);
  double numeric_dev = 0.0;
  double order_violation = -std::numeric_limits<double>::infinity();
  double hull_dev = 0.0;
  for (double t : linspace(0.02, 4.0, 200)) {
    const double var = two_speed_f_var(theta, c, t);
    const double crem = two_speed_f_crem(theta, c, t);
    numeric_dev = std::max(numeric_dev, std::abs(var - f_var_numeric(spec, t)));
    order_violation = std::max(order_violation, crem - var);
    hull_dev = std::max(hull_dev, std::abs(bovier_kurkova(spec, t) - crem));
  }
  std::vector<CheckRecord> out;
  out.push_back(near("f_var_closed_vs_numeric", 0.0, numeric_dev, 1e-6, "derived",
                     "max deviation over 200 t in [0.02,4]"));
  out.push_back(at_most("f_crem_le_f_var", 0.0, order_violation, "exact",
                        "max of f_crem - f_var over the t grid"));
  out.push_back(near("bovier_kurkova_vs_f_crem", 0.0, hull_dev, 1e-10, "derived",
                     "hull route vs closed form"));
  const double gap = two_speed_f_var(theta, c, kLog2) - two_speed_f_crem(theta, c, kLog2);
  out.push_back(at_least("gap_at_t=log2", 0.05, gap, "derived", "expected about 0.0858"));
  return out;
}

std::vector<CheckRecord> mc_convergence(const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  const double t = 2 * kLog2;
  const double limit = f_t0_closed(t);
  std::vector<FreeEnergyEstimate> runs;
  for (int N : {8, 12, 16, 20}) {
    DirectConfig cfg;
    cfg.N = N;
    cfg.t = t;
    cfg.replicas = 200;
    cfg.seed = seed_for(opts, 0x3C0DE + static_cast<std::uint64_t>(N));
    cfg.threads = opts.threads;
    runs.push_back(estimate_free_energy_direct(cfg));
  }
  out.push_back(near("identity_N20_vs_limit", limit, runs.back().mean, 0.15, "empirical",
                     "direct, 200 replicas, t = 2 log 2"));
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const double prev = std::abs(runs[i - 1].mean - limit);
    const double cur = std::abs(runs[i].mean - limit);
    worst = std::max(worst, cur - prev - combined(runs[i - 1].std_error, runs[i].std_error));
  }
  out.push_back(at_most("identity_deviation_nonincreasing", 0.0, worst, "empirical",
                        "max over consecutive N of dev(N') - dev(N) - combined stderr"));

  DirectConfig rem;
  rem.spec = CovarianceSpec::rem();
  rem.N = 20;
  rem.t = t;
  rem.replicas = 200;
  rem.seed = seed_for(opts, 0x3E0);
  rem.threads = opts.threads;
  out.push_back(near("rem_N20_vs_limit", limit, estimate_free_energy_direct(rem).mean, 0.15,
                     "empirical", "direct, 200 replicas, t = 2 log 2"));

  const auto b20 = brw_max_estimate(20, 200, seed_for(opts, 0xB20), opts.threads);
  const auto b8 = brw_max_estimate(8, 200, seed_for(opts, 0xB08), opts.threads);
  CheckRecord range = near("brw_max_N20_in_range", 1.09, b20.mean, 0.09, "empirical",
                           "interval [1.00, 1.18]");
  range.pass = b20.mean >= 1.00 && b20.mean <= 1.18;
  out.push_back(range);
  out.push_back(at_least("brw_max_N20_exceeds_N8", b8.mean, b20.mean, "empirical"));
  return out;
}

std::vector<CheckRecord> cascade_identity(const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  const std::vector<double> half{0.5};
  const auto f = cascade_functional_estimate(half, 400, 10000, seed_for(opts, 0xCA5), opts.threads);
  out.push_back(near("cascade_functional_zeta=0.5", 0.25, f.estimate.mean,
                     3 * f.estimate.std_error, "exact", "E log sum v exp(g) = zeta/2"));

  struct Cell {
    int N;
    std::vector<double> zetas;
    StepPath q;
    std::size_t direct_replicas;
  };
  const std::vector<Cell> cells{
      {4, {0.5}, StepPath({0.0, 0.5}, {0.0, 1.0}), 200},
      {6, {0.5}, StepPath({0.0, 0.5}, {0.0, 1.0}), 200},
      {4, {1.0 / 3, 2.0 / 3}, StepPath({0.0, 1.0 / 3, 2.0 / 3}, {0.0, 0.5, 1.0}), 100},
      {6, {1.0 / 3, 2.0 / 3}, StepPath({0.0, 1.0 / 3, 2.0 / 3}, {0.0, 0.5, 1.0}), 100},
  };
  for (const auto& cell : cells) {
    DirectConfig d;
    d.N = cell.N;
    d.zetas = cell.zetas;
    d.K = 400;
    d.t = 0.5;
    d.q = cell.q;
    d.replicas = cell.direct_replicas;
    d.seed = seed_for(opts, 0xD1 + 16 * static_cast<std::uint64_t>(cell.N + 10 * cell.zetas.size()));
    d.threads = opts.threads;
    NestedConfig n;
    n.N = cell.N;
    n.zetas = cell.zetas;
    n.t = 0.5;
    n.q = cell.q;
    n.outer = 200;
    n.inner = 10000;
    n.seed = seed_for(opts, 0xE1 + 16 * static_cast<std::uint64_t>(cell.N + 10 * cell.zetas.size()));
    n.threads = opts.threads;
    const auto a = estimate_free_energy_direct(d);
    const auto b = estimate_free_energy_nested(n);
    out.push_back(near("direct_vs_nested_N=" + std::to_string(cell.N) +
                           "_M=" + std::to_string(cell.zetas.size()),
                       a.mean, b.mean, 3 * combined(a.std_error, b.std_error), "derived",
                       "direct K=400 vs nested inner=1e4 outer=200"));
  }
  return out;
}

std::vector<CheckRecord> comparison(const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  const StepPath zero({0.0, 0.5}, {0.0, 0.0});
  const StepPath ramp({0.0, 0.5}, {0.0, 1.0});
  for (double t : {0.5, 1.5}) {
    for (const StepPath* q : {&zero, &ramp}) {
      DirectConfig cfg;
      cfg.N = 12;
      cfg.zetas = {0.5};
      cfg.K = 100;
      cfg.t = t;
      cfg.q = *q;
      cfg.replicas = 100;
      cfg.seed = seed_for(opts, 0xC0C0);
      cfg.threads = opts.threads;
      cfg.spec = CovarianceSpec::power(2);
      const auto low = estimate_free_energy_direct(cfg);
      cfg.spec = CovarianceSpec::identity();
      const auto high = estimate_free_energy_direct(cfg);
      out.push_back(at_most("gaussian_comparison_t=" + format_double(t) + "_q=" + path_id(*q),
                            high.mean + 3 * combined(low.std_error, high.std_error), low.mean,
                            "empirical", "F(power 2) <= F(identity) + 3 combined stderr"));
    }
  }
  return out;
}

std::vector<CheckRecord> lipschitz(const SuiteOptions& opts) {
  StreamEngine eng(seed_for(opts, 0x11F), StreamKey{});
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const auto draw = [&] {
      double a = 2.0 * eng.uniform_open();
      double b = 2.0 * eng.uniform_open();
      if (a > b) std::swap(a, b);
      return StepPath({0.0, 0.5}, {a, b});
    };
    const StepPath q = draw();
    const StepPath r = draw();
    DirectConfig cfg;
    cfg.N = 8;
    cfg.zetas = {0.5};
    cfg.K = 100;
    cfg.t = 1.0;
    cfg.replicas = 100;
    cfg.seed = seed_for(opts, 0x11F0 + static_cast<std::uint64_t>(i));
    cfg.threads = opts.threads;
    cfg.q = q;
    const auto fq = estimate_free_energy_direct(cfg);
    cfg.q = r;
    const auto fr = estimate_free_energy_direct(cfg);
    const double slack = l1_distance(q, r) + 3 * combined(fq.std_error, fr.std_error);
    worst = std::max(worst, std::abs(fq.mean - fr.mean) - slack);
  }
  return {at_most("lipschitz_in_q", 0.0, worst, "empirical",
                  "max over 20 pairs of |F(q)-F(r)| - l1(q,r) - 3 combined stderr")};
}

std::vector<CheckRecord> derivatives(const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  OverlapConfig g0;
  g0.N = 4;
  g0.replicas = 4;
  g0.seed = seed_for(opts, 0xDE0);
  // Uniform Gibbs measure: P(overlap = k) = 2^-(k+1) for k < N, 2^-N for k = N.
  double exact = 0.0;
  for (int k = 0; k <= g0.N; ++k) {
    exact += std::ldexp(1.0, -(k < g0.N ? k + 1 : g0.N)) * k / g0.N;
  }
  out.push_back(near("gibbs_dt_N4_t0", exact, gibbs_overlap_moments(g0).dF_dt, 1e-12,
                     "exact", "expected 0.234375"));

  OverlapConfig g;
  g.N = 8;
  g.t = 1.0;
  g.replicas = 2000;
  g.seed = seed_for(opts, 0xDE1);
  g.threads = opts.threads;
  const auto gm = gibbs_overlap_moments(g);
  const double h = 1e-2;
  DirectConfig d;
  d.N = 8;
  d.replicas = 2000;
  d.seed = seed_for(opts, 0xDE2);
  d.threads = opts.threads;
  d.t = 1.0 + h;
  const auto up = estimate_free_energy_direct(d);
  d.t = 1.0 - h;
  const auto down = estimate_free_energy_direct(d);
  std::vector<double> fd(up.samples.size());
  for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (up.samples[i] - down.samples[i]) / (2 * h);
  const auto fd_stats = mean_stderr(fd);
  out.push_back(near("gibbs_dt_vs_finite_difference_N8_t1", fd_stats.mean, gm.dF_dt,
                     3 * combined(gm.dF_dt_err, fd_stats.std_error), "derived",
                     "common random numbers across t +- h"));

  OverlapConfig gq;
  gq.N = 6;
  gq.zetas = {0.5};
  gq.K = 100;
  gq.t = 0.5;
  gq.q = StepPath({0.0, 0.5}, {0.2, 1.0});
  gq.replicas = 200;
  gq.seed = seed_for(opts, 0xDE3);
  gq.threads = opts.threads;
  const auto mq = gibbs_overlap_moments(gq);
  double neg = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mq.dF_dq.size(); ++k) {
    neg = std::max(neg, -mq.dF_dq[k] - 3 * mq.dF_dq_err[k]);
  }
  out.push_back(at_most("dq_nonnegative", 0.0, neg, "empirical",
                        "max of -dF_dq_k - 3 stderr"));
  const double w0 = 0.5;
  const double w1 = 0.5;
  const double drop = mq.dF_dq[0] / w0 - mq.dF_dq[1] / w1 -
                      3 * combined(mq.dF_dq_err[0] / w0, mq.dF_dq_err[1] / w1);
  out.push_back(at_most("dq_normalized_nondecreasing", 0.0, drop, "empirical",
                        "dF_dq_0/(zeta_1) - dF_dq_1/(1-zeta_1) - 3 combined stderr"));
  return out;
}

}  // namespace crem::criteria
