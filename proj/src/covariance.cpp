#include "crem/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "crem/error.hpp"

namespace crem {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double two_speed_tail_slope(const cov::TwoSpeed& s) {
  return (1.0 - s.theta * s.c) / (1.0 - s.c);
}

double interpolate(std::span<const Point> knots, double x) {
  auto it = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  if (it == knots.end()) return knots.back().y;
  if (it == knots.begin()) return knots.front().y;
  const Point& b = *it;
  const Point& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

void validate(const cov::Power& v) {
  if (!(v.p >= 1.0) || !std::isfinite(v.p)) {
    throw Error(ErrorKind::domain_error, "power exponent must be >= 1");
  }
}

void validate(const cov::TwoSpeed& v) {
  if (!(v.theta > 1.0) || !std::isfinite(v.theta)) {
    throw Error(ErrorKind::domain_error, "two_speed requires theta > 1");
  }
  if (!(v.c > 0.0 && v.c < 1.0)) {
    throw Error(ErrorKind::domain_error, "two_speed requires c in (0,1)");
  }
  if (!(v.theta * v.c < 1.0)) {
    throw Error(ErrorKind::domain_error, "two_speed requires theta * c < 1");
  }
}

void validate(const cov::PiecewiseLinear& v) {
  const auto& k = v.knots;
  if (k.size() < 2) {
    throw Error(ErrorKind::domain_error, "piecewise_linear needs >= 2 knots");
  }
  if (k.front() != Point{0.0, 0.0} || k.back() != Point{1.0, 1.0}) {
    throw Error(ErrorKind::domain_error,
                "piecewise_linear must start at (0,0) and end at (1,1)");
  }
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (!(k[i].x > k[i - 1].x)) {
      throw Error(ErrorKind::domain_error,
                  "piecewise_linear knot abscissae must increase strictly");
    }
    if (!(k[i].y >= k[i - 1].y)) {
      throw Error(ErrorKind::domain_error,
                  "piecewise_linear must be nondecreasing");
    }
  }
}

void validate(const cov::Identity&) {}
void validate(const cov::Rem&) {}

double max_slope(std::span<const Point> k) {
  double best = 0.0;
  for (std::size_t i = 1; i < k.size(); ++i) {
    best = std::max(best, (k[i].y - k[i - 1].y) / (k[i].x - k[i - 1].x));
  }
  return best;
}

}  // namespace

CovarianceSpec::CovarianceSpec(Variant v) : v_(std::move(v)) {
  std::visit([](const auto& alt) { validate(alt); }, v_);
}

double CovarianceSpec::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::domain_error, "A is defined on [0,1]");
  }
  return std::visit(
      overloaded{
          [&](const cov::Identity&) { return x; },
          [&](const cov::Power& s) { return std::pow(x, s.p); },
          [&](const cov::PiecewiseLinear& s) { return interpolate(s.knots, x); },
          [&](const cov::TwoSpeed& s) {
            return x <= s.c ? s.theta * x
                            : s.theta * s.c + two_speed_tail_slope(s) * (x - s.c);
          },
          [&](const cov::Rem&) { return x == 1.0 ? 1.0 : 0.0; },
      },
      v_);
}

std::vector<Point> CovarianceSpec::knots() const {
  return std::visit(
      overloaded{
          [](const cov::Identity&) {
            return std::vector<Point>{{0.0, 0.0}, {1.0, 1.0}};
          },
          [](const cov::TwoSpeed& s) {
            return std::vector<Point>{{0.0, 0.0}, {s.c, s.theta * s.c}, {1.0, 1.0}};
          },
          [](const cov::PiecewiseLinear& s) { return s.knots; },
          [](const auto&) { return std::vector<Point>{}; },
      },
      v_);
}

double CovarianceSpec::lipschitz_constant() const noexcept {
  return std::visit(overloaded{
                        [](const cov::Identity&) { return 1.0; },
                        [](const cov::Power& s) { return s.p; },
                        [](const cov::PiecewiseLinear& s) { return max_slope(s.knots); },
                        [](const cov::TwoSpeed& s) {
                          return std::max(s.theta, two_speed_tail_slope(s));
                        },
                        [](const cov::Rem&) { return kInf; },
                    },
                    v_);
}

double CovarianceSpec::left_derivative_at_one() const noexcept {
  return std::visit(overloaded{
                        [](const cov::Identity&) { return 1.0; },
                        [](const cov::Power& s) { return s.p; },
                        [](const cov::PiecewiseLinear& s) {
                          const auto& k = s.knots;
                          const auto& a = k[k.size() - 2];
                          return (1.0 - a.y) / (1.0 - a.x);
                        },
                        [](const cov::TwoSpeed& s) { return two_speed_tail_slope(s); },
                        [](const cov::Rem&) { return kInf; },
                    },
                    v_);
}

std::string CovarianceSpec::id() const {
  return std::visit(
      overloaded{
          [](const cov::Identity&) { return std::string("identity"); },
          [](const cov::Power& s) { return "power(" + fmt_g(s.p) + ")"; },
          [](const cov::PiecewiseLinear& s) {
            std::string out = "piecewise_linear(";
            for (std::size_t i = 0; i < s.knots.size(); ++i) {
              if (i) out += ';';
              out += fmt_g(s.knots[i].x) + ':' + fmt_g(s.knots[i].y);
            }
            return out + ')';
          },
          [](const cov::TwoSpeed& s) {
            return "two_speed(" + fmt_g(s.theta) + ';' + fmt_g(s.c) + ")";
          },
          [](const cov::Rem&) { return std::string("rem"); },
      },
      v_);
}

bool operator==(const CovarianceSpec& a, const CovarianceSpec& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(
      overloaded{
          [&](const cov::Power& s) { return s.p == std::get<cov::Power>(b.v_).p; },
          [&](const cov::TwoSpeed& s) {
            const auto& o = std::get<cov::TwoSpeed>(b.v_);
            return s.theta == o.theta && s.c == o.c;
          },
          [&](const cov::PiecewiseLinear& s) {
            return s.knots == std::get<cov::PiecewiseLinear>(b.v_).knots;
          },
          [](const auto&) { return true; },
      },
      a.v_);
}

double eval_A(const CovarianceSpec& spec, double x) { return spec(x); }

bool is_weak_correlation(const CovarianceSpec& spec) {
  for (const Point& k : spec.knots()) {
    if (k.y > k.x) return false;
  }
  constexpr int kGrid = 10000;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    if (spec(x) > x + 1e-14) return false;
  }
  return true;
}

bool is_convex(const CovarianceSpec& spec) {
  if (auto k = spec.knots(); !k.empty()) {
    double prev = -kInf;
    for (std::size_t i = 1; i < k.size(); ++i) {
      const double s = (k[i].y - k[i - 1].y) / (k[i].x - k[i - 1].x);
      if (s < prev) return false;
      prev = s;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Concave hull
// ---------------------------------------------------------------------------

ConcaveHull::ConcaveHull(std::vector<Point> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2 || vertices_.front().x != 0.0 ||
      vertices_.back().x != 1.0) {
    throw Error(ErrorKind::domain_error, "hull must span [0,1]");
  }
}

std::vector<double> ConcaveHull::slopes() const {
  std::vector<double> out(vertices_.size() - 1);
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    out[i] = (vertices_[i + 1].y - vertices_[i].y) /
             (vertices_[i + 1].x - vertices_[i].x);
  }
  return out;
}

double ConcaveHull::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::domain_error, "hull is defined on [0,1]");
  }
  return interpolate(vertices_, x);
}

double ConcaveHull::right_derivative(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::domain_error, "hull is defined on [0,1]");
  }
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  std::size_t seg = static_cast<std::size_t>(it - vertices_.begin());
  seg = std::clamp<std::size_t>(seg, 1, vertices_.size() - 1) - 1;
  const Point& a = vertices_[seg];
  const Point& b = vertices_[seg + 1];
  return (b.y - a.y) / (b.x - a.x);
}

ConcaveHull upper_hull(std::vector<Point> points) {
  std::vector<Point> hull;
  hull.reserve(points.size());
  for (const Point& p : points) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return ConcaveHull(std::move(hull));
}

ConcaveHull concave_hull(const std::function<double(double)>& f, int grid) {
  if (grid < 2) throw Error(ErrorKind::domain_error, "hull grid must be >= 2");
  std::vector<Point> pts(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1 ? 1.0 : static_cast<double>(i) / (grid - 1);
    pts[static_cast<std::size_t>(i)] = {x, f(x)};
  }
  return upper_hull(std::move(pts));
}

ConcaveHull concave_hull(const CovarianceSpec& spec, int grid) {
  if (grid < 2) throw Error(ErrorKind::domain_error, "hull grid must be >= 2");
  if (std::holds_alternative<cov::Rem>(spec.variant())) {
    return ConcaveHull({{0.0, 0.0}, {1.0, 1.0}});
  }
  if (auto knots = spec.knots(); !knots.empty()) return upper_hull(std::move(knots));
  return concave_hull([&](double x) { return spec(x); }, grid);
}

double x_of_t(const ConcaveHull& hull, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::domain_error, "x(t) requires t > 0");
  const double threshold = kLog2 / t;
  const auto slopes = hull.slopes();
  double x = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] < threshold) break;
    x = hull.vertices()[i + 1].x;
  }
  return x;
}

double sqrt_slope_integral(const ConcaveHull& hull, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::domain_error, "integration limit must lie in [0,1]");
  }
  const auto v = hull.vertices();
  const auto slopes = hull.slopes();
  double sum = 0.0;
  for (std::size_t i = 0; i < slopes.size() && v[i].x < x; ++i) {
    const double len = std::min(x, v[i + 1].x) - v[i].x;
    sum += std::sqrt(std::max(slopes[i], 0.0)) * len;
  }
  return sum;
}

std::function<double(double)> extend_A(const CovarianceSpec& spec) {
  const double lip = spec.lipschitz_constant();
  if (!std::isfinite(lip)) {
    throw Error(ErrorKind::unbounded_slope, "rem has no finite Lipschitz constant");
  }
  return [spec, lip](double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0 + lip * (x - 1.0);
    return spec(x);
  };
}

double ConvexMinorant::operator()(double x) const {
  return std::max(0.0, 1.0 + (x - 1.0) / delta);
}

ConvexMinorant convex_minorant(const CovarianceSpec& spec) {
  const double slope = spec.left_derivative_at_one();
  if (!std::isfinite(slope)) {
    throw Error(ErrorKind::unbounded_slope, "A has no finite left derivative at 1");
  }
  double delta = slope > 0.0 ? std::min(1.0, 0.99 * 2.0 / (3.0 * slope)) : 1.0;
  constexpr int kGrid = 20000;
  for (int attempt = 0; attempt < 60; ++attempt, delta *= 0.5) {
    const ConvexMinorant m{delta};
    bool ok = true;
    for (int i = 0; i <= kGrid && ok; ++i) {
      const double x = static_cast<double>(i) / kGrid;
      ok = m(x) <= spec(x) + 1e-14;
    }
    if (ok) return m;
  }
  throw Error(ErrorKind::domain_error, "no convex minorant found");
}

}  // namespace crem
