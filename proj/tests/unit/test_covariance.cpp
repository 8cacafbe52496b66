#include <limits>

#include "crem/covariance.hpp"
#include "helpers.hpp"

using crem::CovarianceSpec;
using crem::ErrorKind;

namespace {

std::vector<CovarianceSpec> all_specs() {
  return {CovarianceSpec::identity(),
          CovarianceSpec::power(2),
          CovarianceSpec::power(4),
          CovarianceSpec::two_speed(2, 0.25),
          CovarianceSpec::piecewise_linear({{0, 0}, {0.3, 0.2}, {1, 1}}),
          CovarianceSpec::rem()};
}

}  // namespace

TEST_CASE("eval_A per variant") {
  CHECK(crem::eval_A(CovarianceSpec::identity(), 0.37) == doctest::Approx(0.37));
  CHECK(crem::eval_A(CovarianceSpec::two_speed(2, 0.25), 0.5) == doctest::Approx(2.0 / 3));
  CHECK(crem::eval_A(CovarianceSpec::rem(), 0.999) == 0.0);
  CHECK(crem::eval_A(CovarianceSpec::rem(), 1.0) == 1.0);
  CHECK(crem::eval_A(CovarianceSpec::power(2), 0.5) == doctest::Approx(0.25));
  CHECK(crem::eval_A(CovarianceSpec::piecewise_linear({{0, 0}, {0.3, 0.2}, {1, 1}}), 0.15) ==
        doctest::Approx(0.1));
  CHECK_ERROR_KIND(crem::eval_A(CovarianceSpec::identity(), 1.5), ErrorKind::domain_error);
  CHECK_ERROR_KIND(crem::eval_A(CovarianceSpec::identity(), -0.1), ErrorKind::domain_error);
}

TEST_CASE("covariance parameter validation") {
  CHECK_ERROR_KIND(CovarianceSpec::two_speed(2, 0.6), ErrorKind::domain_error);
  CHECK_ERROR_KIND(CovarianceSpec::two_speed(0.5, 0.25), ErrorKind::domain_error);
  CHECK_ERROR_KIND(CovarianceSpec::power(0.5), ErrorKind::domain_error);
  CHECK_ERROR_KIND(CovarianceSpec::piecewise_linear({{0, 0}, {0.5, 0.7}, {1, 0.9}}),
                   ErrorKind::domain_error);
  CHECK_ERROR_KIND(CovarianceSpec::piecewise_linear({{0, 0}, {0.5, 0.7}, {0.4, 0.8}, {1, 1}}),
                   ErrorKind::domain_error);
}

TEST_CASE("weak correlation and convexity") {
  CHECK(crem::is_weak_correlation(CovarianceSpec::identity()));
  CHECK(crem::is_weak_correlation(CovarianceSpec::power(2)));
  CHECK_FALSE(crem::is_weak_correlation(CovarianceSpec::two_speed(2, 0.25)));
  CHECK(crem::is_weak_correlation(CovarianceSpec::rem()));
  CHECK(crem::is_convex(CovarianceSpec::power(2)));
  CHECK_FALSE(crem::is_convex(CovarianceSpec::two_speed(2, 0.25)));
  CHECK(crem::is_convex(CovarianceSpec::piecewise_linear({{0, 0}, {0.3, 0.2}, {1, 1}})));
}

TEST_CASE("concave hull examples") {
  const auto id = crem::concave_hull(CovarianceSpec::identity());
  CHECK(id.vertices().size() == 2);
  CHECK(id.vertices()[0] == crem::Point{0, 0});
  CHECK(id.vertices()[1] == crem::Point{1, 1});

  const auto ts = crem::concave_hull(CovarianceSpec::two_speed(2, 0.25));
  REQUIRE(ts.vertices().size() == 3);
  CHECK(ts.vertices()[1].x == doctest::Approx(0.25));
  CHECK(ts.vertices()[1].y == doctest::Approx(0.5));

  const auto p2 = crem::concave_hull(CovarianceSpec::power(2));
  REQUIRE(p2.vertices().size() == 2);
  CHECK(p2.vertices()[1] == crem::Point{1, 1});
  CHECK(crem::concave_hull(CovarianceSpec::rem()).vertices().size() == 2);
}

TEST_CASE("hull dominates A, is concave and idempotent") {
  for (const auto& spec : all_specs()) {
    CAPTURE(spec.id());
    const auto hull = crem::concave_hull(spec);
    for (int i = 0; i <= 10000; ++i) {
      const double x = i / 10000.0;
      CHECK(hull(x) >= spec(x) - 1e-12);
    }
    const auto slopes = hull.slopes();
    for (std::size_t i = 1; i < slopes.size(); ++i) CHECK(slopes[i] < slopes[i - 1]);
    CHECK(hull(0.0) == doctest::Approx(0.0));
    CHECK(hull(1.0) == doctest::Approx(1.0));
    std::vector<crem::Point> pts(hull.vertices().begin(), hull.vertices().end());
    CHECK(crem::upper_hull(pts) == hull);
  }
}

TEST_CASE("upper hull drops collinear and interior points") {
  const auto h = crem::upper_hull({{0, 0}, {0.25, 0.25}, {0.5, 0.5}, {0.6, 0.1}, {1, 1}});
  CHECK(h.vertices().size() == 2);
}

TEST_CASE("x_of_t") {
  const auto id = crem::concave_hull(CovarianceSpec::identity());
  CHECK(crem::x_of_t(id, 2 * kLn2) == 1.0);
  CHECK(crem::x_of_t(id, 0.5 * kLn2) == 0.0);
  const auto ts = crem::concave_hull(CovarianceSpec::two_speed(2, 0.25));
  CHECK(crem::x_of_t(ts, kLn2) == doctest::Approx(0.25));
  // Tie: slope exactly log 2 / t resolves to the right end of the segment.
  CHECK(crem::x_of_t(id, kLn2) == 1.0);
}

TEST_CASE("x_of_t is nondecreasing in t") {
  for (const auto& spec : all_specs()) {
    const auto hull = crem::concave_hull(spec);
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double x = crem::x_of_t(hull, 0.1 * i);
      CHECK(x >= prev);
      prev = x;
    }
  }
}

TEST_CASE("sqrt_slope_integral") {
  const auto id = crem::concave_hull(CovarianceSpec::identity());
  CHECK(crem::sqrt_slope_integral(id, 1.0) == doctest::Approx(1.0));
  CHECK(crem::sqrt_slope_integral(id, 0.0) == 0.0);
  const auto ts = crem::concave_hull(CovarianceSpec::two_speed(2, 0.25));
  CHECK(crem::sqrt_slope_integral(ts, 0.25) == doctest::Approx(std::sqrt(2.0) * 0.25));
}

TEST_CASE("extend_A") {
  const auto id = crem::extend_A(CovarianceSpec::identity());
  CHECK(id(-0.5) == 0.0);
  CHECK(id(1.5) == doctest::Approx(1.5));
  const auto p2 = crem::extend_A(CovarianceSpec::power(2));
  CHECK(p2(2.0) == doctest::Approx(3.0));
  CHECK_ERROR_KIND(crem::extend_A(CovarianceSpec::rem()), ErrorKind::unbounded_slope);

  // Convexity is preserved for convex A.
  for (double x = -1; x <= 3; x += 0.05) {
    const double mid = p2(x + 0.05);
    CHECK(mid <= 0.5 * (p2(x) + p2(x + 0.1)) + 1e-12);
  }
}

TEST_CASE("lipschitz constants and ids") {
  CHECK(CovarianceSpec::power(2).lipschitz_constant() == doctest::Approx(2.0));
  CHECK(CovarianceSpec::two_speed(2, 0.25).lipschitz_constant() == doctest::Approx(2.0));
  CHECK(std::isinf(CovarianceSpec::rem().lipschitz_constant()));
  CHECK(CovarianceSpec::identity().id() == "identity");
  CHECK(CovarianceSpec::power(2).id() == "power(2)");
  CHECK(CovarianceSpec::rem().id() == "rem");
  CHECK(CovarianceSpec::two_speed(2, 0.25).id().find(',') == std::string::npos);
}

TEST_CASE("convex minorant stays below A") {
  for (const auto& spec : {CovarianceSpec::identity(), CovarianceSpec::power(2),
                           CovarianceSpec::two_speed(2, 0.25)}) {
    const auto m = crem::convex_minorant(spec);
    CHECK(m.delta > 0.0);
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      CHECK(m(x) <= spec(x) + 1e-12);
    }
    CHECK(m(1.0) == doctest::Approx(1.0));
  }
}
