#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace crem {

/// Default sampling resolution for hulls of curved covariance functions.
inline constexpr int kDefaultHullGrid = 4097;

struct Point {
  double x;
  double y;
  friend bool operator==(const Point&, const Point&) = default;
};

namespace cov {
struct Identity {};
struct Power {
  double p;
};
struct PiecewiseLinear {
  std::vector<Point> knots;
};
struct TwoSpeed {
  double theta;
  double c;
};
/// Random energy model: A = 1_{x=1}.
struct Rem {};
}  // namespace cov

/// An increasing covariance function A on [0,1] with A(0) = 0, A(1) = 1.
class CovarianceSpec {
 public:
  using Variant = std::variant<cov::Identity, cov::Power, cov::PiecewiseLinear,
                               cov::TwoSpeed, cov::Rem>;

  /// Validates the variant's parameters; throws Error(domain_error).
  explicit CovarianceSpec(Variant v);
  CovarianceSpec() : CovarianceSpec(cov::Identity{}) {}

  static CovarianceSpec identity() { return CovarianceSpec(cov::Identity{}); }
  static CovarianceSpec power(double p) { return CovarianceSpec(cov::Power{p}); }
  static CovarianceSpec two_speed(double theta, double c) {
    return CovarianceSpec(cov::TwoSpeed{theta, c});
  }
  static CovarianceSpec piecewise_linear(std::vector<Point> knots) {
    return CovarianceSpec(cov::PiecewiseLinear{std::move(knots)});
  }
  static CovarianceSpec rem() { return CovarianceSpec(cov::Rem{}); }

  const Variant& variant() const noexcept { return v_; }

  /// A(x); throws Error(domain_error) outside [0,1].
  double operator()(double x) const;

  /// Knots of the exact piecewise-linear representation, when one exists
  /// (identity, two_speed, piecewise_linear). Empty otherwise.
  std::vector<Point> knots() const;
  bool is_piecewise_linear() const noexcept { return !knots().empty(); }

  /// Lipschitz constant on [0,1]; +infinity for rem.
  double lipschitz_constant() const noexcept;
  /// Left derivative at 1; +infinity for rem.
  double left_derivative_at_one() const noexcept;

  /// Short CSV-safe identifier, e.g. "power(2)" or "two_speed(2,0.25)".
  std::string id() const;

  friend bool operator==(const CovarianceSpec& a, const CovarianceSpec& b);

 private:
  Variant v_;
};

double eval_A(const CovarianceSpec& spec, double x);

/// True iff A(x) <= x at every knot and on a 10^4-point grid.
bool is_weak_correlation(const CovarianceSpec& spec);

/// Convexity on [0,1]: exact for piecewise-linear variants, power and rem.
bool is_convex(const CovarianceSpec& spec);

/// Piecewise-linear concave majorant on [0,1].
class ConcaveHull {
 public:
  /// Takes ownership of already-concave vertices (x strictly increasing,
  /// slopes strictly decreasing, spanning [0,1]).
  explicit ConcaveHull(std::vector<Point> vertices);

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::vector<double> slopes() const;

  double operator()(double x) const;
  /// Right derivative; at x = 1 the slope of the last segment.
  double right_derivative(double x) const;

  friend bool operator==(const ConcaveHull&, const ConcaveHull&) = default;

 private:
  std::vector<Point> vertices_;
};

/// Upper hull (monotone chain) of points sorted by x. Collinear interior
/// points are dropped.
ConcaveHull upper_hull(std::vector<Point> points);

/// Exact for piecewise-linear variants and rem, otherwise the hull of the
/// graph sampled at `grid` equispaced points.
ConcaveHull concave_hull(const CovarianceSpec& spec, int grid = kDefaultHullGrid);

/// Hull of an arbitrary evaluable increasing function on [0,1].
ConcaveHull concave_hull(const std::function<double(double)>& f, int grid);

/// x(t) = sup{x in (0,1) : hull'(x) >= log 2 / t}; 0 when the set is empty.
double x_of_t(const ConcaveHull& hull, double t);

/// Integral of sqrt(hull') over [0, x].
double sqrt_slope_integral(const ConcaveHull& hull, double x);

/// Continuous nondecreasing extension of A to the real line: 0 below 0,
/// A on [0,1], and 1 + Lip(A)(x - 1) above 1. Error(unbounded_slope) for rem.
std::function<double(double)> extend_A(const CovarianceSpec& spec);

/// Convex Lipschitz minorant (A(1) + (x - 1)/delta)_+ of A.
struct ConvexMinorant {
  double delta;
  double operator()(double x) const;
};

/// Builds a minorant valid on [0,1] by shrinking delta from 2/(3 A'(1-))
/// until the linear piece stays below A on a fine grid.
ConvexMinorant convex_minorant(const CovarianceSpec& spec);

}  // namespace crem
