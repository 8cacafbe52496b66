#include <algorithm>

#include "crem/analytic.hpp"
#include "crem/cascade.hpp"
#include "crem/disorder.hpp"
#include "crem/estimators.hpp"
#include "crem/numeric.hpp"
#include "crem/overlaps.hpp"
#include "helpers.hpp"

using crem::CovarianceSpec;
using crem::ErrorKind;
using crem::StepPath;

namespace {

struct PairStats {
  double var_a;
  double cov;
};

// Empirical variance of leaf 0 and covariance of leaves (0, partner).
PairStats leaf_pair_stats(const CovarianceSpec& spec, int N, std::size_t partner, int replicas) {
  double s_aa = 0.0;
  double s_ab = 0.0;
  for (int r = 0; r < replicas; ++r) {
    const auto h = crem::sample_crem(spec, N, 77, crem::StreamKey{static_cast<std::uint64_t>(r)})
                       .leaf_values();
    s_aa += h[0] * h[0];
    s_ab += h[0] * h[partner];
  }
  return {s_aa / replicas, s_ab / replicas};
}

}  // namespace

TEST_CASE("sample_brw layout") {
  const auto d = crem::sample_brw(1, 5);
  CHECK(d.depth() == 1);
  CHECK(d.draws().size() == 2);
  const auto leaves = d.leaf_values();
  REQUIRE(leaves.size() == 2);
  CHECK(leaves[0] == d.increment(1, 0));
  CHECK(leaves[1] == d.increment(1, 1));

  const auto t = crem::sample_brw(5, 6);
  CHECK(t.draws().size() == (std::size_t{1} << 6) - 2);
  const auto h = t.leaf_values();
  // Leaf 0b10110: branches 1,0,1,1,0 from the root.
  const std::size_t leaf = 0b10110;
  double sum = 0.0;
  for (int level = 1; level <= 5; ++level) sum += t.increment(level, leaf >> (5 - level));
  CHECK(h[leaf] == doctest::Approx(sum));

  CHECK_ERROR_KIND(crem::sample_brw(27, 1), ErrorKind::depth_too_large);
  CHECK_ERROR_KIND(crem::sample_brw(0, 1), ErrorKind::depth_too_large);
}

TEST_CASE("sample_crem scales") {
  const auto rem = crem::level_scales(CovarianceSpec::rem(), 8);
  for (int i = 0; i < 7; ++i) CHECK(rem[static_cast<std::size_t>(i)] == 0.0);
  CHECK(rem[7] == doctest::Approx(std::sqrt(8.0)));

  const auto a = crem::sample_crem(CovarianceSpec::identity(), 6, 3).leaf_values();
  const auto b = crem::sample_brw(6, 3).leaf_values();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}

TEST_CASE("empirical leaf covariances match N A(overlap / N)") {
  const int reps = 10000;
  const auto brw = leaf_pair_stats(CovarianceSpec::identity(), 10, 1, reps);
  CHECK(brw.var_a == doctest::Approx(10.0).epsilon(0.05));
  CHECK(brw.cov == doctest::Approx(9.0).epsilon(0.055));

  // Leaves 0 and 0b00100000 share a prefix of length 2.
  const auto ts = leaf_pair_stats(CovarianceSpec::two_speed(2, 0.25), 8, 0b00100000, reps);
  CHECK(std::abs(ts.cov - 4.0) < 0.3);

  const auto rem = leaf_pair_stats(CovarianceSpec::rem(), 8, 1, reps);
  CHECK(rem.var_a == doctest::Approx(8.0).epsilon(0.05));
  CHECK(std::abs(rem.cov) < 0.3);
}

TEST_CASE("sample_cascade invariants") {
  const std::vector<double> zetas{0.3, 0.7};
  const auto c = crem::sample_cascade(zetas, 20, 11);
  CHECK(c.depth == 2);
  CHECK(c.log_weights.size() == 400);
  const auto w = c.weights();
  CHECK(crem::pairwise_sum(w) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& level : c.log_atoms) {
    for (std::size_t block = 0; block < level.size(); block += 20) {
      CHECK(std::is_sorted(level.begin() + static_cast<std::ptrdiff_t>(block),
                           level.begin() + static_cast<std::ptrdiff_t>(block + 20),
                           std::greater<>()));
    }
  }
  const std::vector<double> constant(400, 1.7);
  CHECK(c.log_average(constant) == doctest::Approx(1.7).epsilon(1e-12));

  const auto small = crem::node_log_atoms(5, 0, 1, 0, 0.5, 10);
  const auto large = crem::node_log_atoms(5, 0, 1, 0, 0.5, 20);
  CHECK(std::equal(small.begin(), small.end(), large.begin()));
}

TEST_CASE("sample_cascade errors") {
  const std::vector<double> unordered{0.6, 0.3};
  const std::vector<double> edge{0.0};
  const std::vector<double> deep{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> one{0.5};
  CHECK_ERROR_KIND(crem::sample_cascade(unordered, 10, 1), ErrorKind::bad_zetas);
  CHECK_ERROR_KIND(crem::sample_cascade(edge, 10, 1), ErrorKind::bad_zetas);
  CHECK_ERROR_KIND(crem::sample_cascade(deep, 10, 1), ErrorKind::bad_zetas);
  CHECK_ERROR_KIND(crem::sample_cascade(one, 1, 1), ErrorKind::branching_too_large);
  const std::vector<double> three{0.2, 0.4, 0.6};
  CHECK_ERROR_KIND(crem::sample_cascade(three, 300, 1), ErrorKind::branching_too_large);
}

TEST_CASE("cascade functional reproduces zeta / 2") {
  const std::vector<double> half{0.5};
  const auto f = crem::cascade_functional_estimate(half, 200, 2000, 17);
  CHECK(std::abs(f.estimate.mean - 0.25) < 4 * f.estimate.std_error);
  CHECK(f.truncation_proxy < 0.01);
}

TEST_CASE("direct estimator: trivial point, determinism, thread independence") {
  crem::DirectConfig cfg;
  cfg.N = 6;
  cfg.replicas = 5;
  cfg.seed = 1;
  const auto triv = crem::estimate_free_energy_direct(cfg);
  CHECK(triv.mean == doctest::Approx(-kLn2).epsilon(1e-15));
  CHECK(triv.std_error == 0.0);

  cfg.zetas = {0.5};
  cfg.q = StepPath({0, 0.5}, {0.2, 1.0});
  cfg.t = 0.8;
  cfg.K = 50;
  cfg.replicas = 12;
  const auto a = crem::estimate_free_energy_direct(cfg);
  const auto b = crem::estimate_free_energy_direct(cfg);
  cfg.threads = 4;
  const auto c = crem::estimate_free_energy_direct(cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.samples == b.samples);
  CHECK(a.samples == c.samples);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == c.std_error);
  CHECK(crem::direct_replica_value(cfg, 3) == a.samples[3]);
  const auto s = crem::mean_stderr(a.samples);
  CHECK(a.std_error == doctest::Approx(s.std_error));
  CHECK(a.params.path == crem::path_id(cfg.q));
  CHECK(a.params.M == 1);
}

TEST_CASE("estimators reject misaligned paths and tiny inner samples") {
  crem::DirectConfig d;
  d.N = 4;
  d.zetas = {0.4};
  d.q = StepPath({0, 0.5}, {0, 1});
  d.seed = 1;
  CHECK_ERROR_KIND(crem::estimate_free_energy_direct(d), ErrorKind::grid_mismatch);

  crem::NestedConfig n;
  n.N = 4;
  n.zetas = {0.5};
  n.q = StepPath({0, 0.5}, {0, 1});
  n.inner = 50;
  CHECK_ERROR_KIND(crem::estimate_free_energy_nested(n), ErrorKind::insufficient_samples);
  n.inner = 1000;
  n.zetas = {0.3};
  CHECK_ERROR_KIND(crem::estimate_free_energy_nested(n), ErrorKind::grid_mismatch);
  CHECK(crem::per_level_samples(10000, 1) == 10000);
  CHECK(crem::per_level_samples(10000, 2) == 100);
  CHECK(crem::per_level_samples(1001, 2) == 32);
}

TEST_CASE("nested estimator: trivial point and determinism") {
  crem::NestedConfig n;
  n.N = 5;
  n.outer = 3;
  n.inner = 100;
  const auto triv = crem::estimate_free_energy_nested(n);
  CHECK(triv.mean == doctest::Approx(-kLn2).epsilon(1e-15));
  CHECK(triv.std_error == 0.0);

  n.zetas = {0.5};
  n.q = StepPath({0, 0.5}, {0, 1});
  n.t = 0.5;
  n.outer = 8;
  n.inner = 400;
  const auto a = crem::estimate_free_energy_nested(n);
  n.threads = 3;
  const auto b = crem::estimate_free_energy_nested(n);
  CHECK(a.samples == b.samples);
  REQUIRE(a.bias_proxy.has_value());
  CHECK(*a.bias_proxy >= 0.0);
}

TEST_CASE("constant enrichment behaves like a time shift at finite N") {
  crem::DirectConfig shifted;
  shifted.N = 10;
  shifted.t = 0.6;
  shifted.q = StepPath::constant(0.5);
  shifted.replicas = 200;
  shifted.seed = 21;
  crem::DirectConfig plain = shifted;
  plain.t = 1.1;
  plain.q = StepPath();
  plain.seed = 22;
  const auto a = crem::estimate_free_energy_direct(shifted);
  const auto b = crem::estimate_free_energy_direct(plain);
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("direct and nested agree on a small cell") {
  crem::DirectConfig d;
  d.N = 4;
  d.zetas = {0.5};
  d.q = StepPath({0, 0.5}, {0, 1});
  d.t = 0.5;
  d.K = 200;
  d.replicas = 1000;
  d.seed = 31;
  crem::NestedConfig n;
  n.N = 4;
  n.zetas = {0.5};
  n.q = d.q;
  n.t = 0.5;
  n.outer = 300;
  n.inner = 2000;
  n.seed = 32;
  const auto a = crem::estimate_free_energy_direct(d);
  const auto b = crem::estimate_free_energy_nested(n);
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("nested estimator at t = 0 approaches psi") {
  crem::NestedConfig n;
  n.N = 20;
  n.zetas = {0.5};
  n.q = StepPath({0, 0.5}, {0, 2 * kLn2});
  // q_0 = 0 leaves no outer randomness at t = 0.
  n.outer = 2;
  n.inner = 200;
  n.seed = 41;
  const auto e = crem::estimate_free_energy_nested(n);
  CHECK(std::abs(e.mean - crem::psi(n.q)) < 0.15);
}

TEST_CASE("gibbs overlaps: exact uniform case") {
  crem::OverlapConfig g;
  g.N = 4;
  g.replicas = 3;
  g.seed = 1;
  const auto m = crem::gibbs_overlap_moments(g);
  CHECK(m.dF_dt == doctest::Approx(0.234375).epsilon(1e-14));
  CHECK(m.dF_dt_err == 0.0);
  REQUIRE(m.dF_dq.size() == 1);
  CHECK(m.dF_dq[0] == doctest::Approx(0.234375).epsilon(1e-14));

  g.zetas = {0.5};
  g.q = StepPath({0, 0.5}, {0, 0});
  g.K = 20;
  const auto mq = crem::gibbs_overlap_moments(g);
  REQUIRE(mq.dF_dq.size() == 2);
  CHECK(mq.dF_dq[0] + mq.dF_dq[1] == doctest::Approx(0.234375).epsilon(1e-12));

  g.N = 13;
  CHECK_ERROR_KIND(crem::gibbs_overlap_moments(g), ErrorKind::depth_too_large);
}

TEST_CASE("gibbs dF_dt matches exhaustive pair enumeration") {
  for (const auto& spec : {CovarianceSpec::identity(), CovarianceSpec::power(2),
                           CovarianceSpec::two_speed(2, 0.25)}) {
    crem::OverlapConfig g;
    g.spec = spec;
    g.N = 6;
    g.t = 0.7;
    g.seed = 91;
    for (std::size_t r = 0; r < 3; ++r) {
      const auto h = crem::sample_crem(spec, g.N, g.seed,
                                       crem::StreamKey{r, 0, 0, crem::Purpose::hamiltonian})
                         .leaf_values();
      const double expected =
          oracle::gibbs_pair_average(h, g.N, std::sqrt(2 * g.t), [&](double x) { return spec(x); });
      CHECK(crem::gibbs_replica_moments(g, r)[0] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("brw max at N = 1 is E max of two Gaussians") {
  const auto b = crem::brw_max_estimate(1, 4000, 13);
  CHECK(std::abs(b.mean - 1 / std::sqrt(std::numbers::pi)) < 4 * b.std_error);
  CHECK_ERROR_KIND(crem::brw_max_estimate(27, 1, 1), ErrorKind::depth_too_large);
}
