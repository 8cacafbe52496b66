#include "crem/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "crem/error.hpp"

namespace crem {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLambdaMax = 1.0 - 1e-12;
constexpr int kTernaryIters = 300;

struct Argmax {
  double x;
  double value;
};

// Golden-section search for the maximum of a concave function on [lo, hi].
// Both endpoints are also compared so boundary maxima are returned exactly.
Argmax golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters = 90) {
  constexpr double kInvPhi = 0.6180339887498949;
  Argmax best{lo, f(lo)};
  if (const double fh = f(hi); fh > best.value) best = {hi, fh};
  if (!(hi > lo)) return best;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

double barrier(double norm) { return -kLog2 / (1.0 - norm); }

void require_two_speed(double theta, double c, double t) {
  CovarianceSpec::two_speed(theta, c);  // validates
  if (!(t > 0.0)) throw Error(ErrorKind::domain_error, "t must be positive");
}

double theta2_of(double theta, double c) { return (1.0 - theta * c) / (1.0 - c); }

int f_crem_regime(double theta, double c, double t) {
  if (t <= kLog2 / theta) return 1;
  if (t <= kLog2 / theta2_of(theta, c)) return 2;
  return 3;
}

int f_var_regime(double theta, double c, double t) {
  const double th2 = theta2_of(theta, c);
  if (t <= kLog2 / theta) return 1;
  if (t <= kLog2 / ((1.0 - c) * (1.0 - c) * theta)) return 2;
  if (t <= kLog2 / ((1.0 - c) * (1.0 - c) * th2)) return 3;
  return 4;
}

// sup over lambda of -log 2/(1 - lambda) + t A(lambda).
double single_jump_search(const CovarianceSpec& spec, double t) {
  const auto objective = [&](double l) { return barrier(l) + t * spec(l); };
  double best = objective(0.0);
  if (auto knots = spec.knots(); !knots.empty()) {
    // Concave on every linear piece of A.
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double lo = knots[i].x;
      const double hi = std::min(knots[i + 1].x, kLambdaMax);
      if (lo >= hi) continue;
      best = std::max(best, golden_max(objective, lo, hi, 200).value);
    }
    return best;
  }
  constexpr int kGrid = 4000;
  int arg = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double l = std::min(static_cast<double>(i) / kGrid, kLambdaMax);
    if (const double v = objective(l); v > best) {
      best = v;
      arg = i;
    }
  }
  const double lo = std::max(0.0, static_cast<double>(arg - 1) / kGrid);
  const double hi = std::min(static_cast<double>(arg + 1) / kGrid, kLambdaMax);
  return std::max(best, golden_max(objective, lo, hi, 200).value);
}

// Maximizes F over p = level on [1 - xi2, 1 - xi1), 1 on [1 - xi1, 1).
// F(level, xi1, xi2) must be concave in xi2 for fixed (level, xi1).
double two_level_search(const std::function<double(double, double, double)>& F) {
  const auto inner = [&](double level, double xi1) {
    return golden_max([&](double xi2) { return F(level, xi1, xi2); }, xi1,
                      kLambdaMax, 80)
        .value;
  };
  constexpr int kGrid = 48;
  double best = -kInf;
  double best_level = 0.0;
  double best_xi1 = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double level = static_cast<double>(i) / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double xi1 = static_cast<double>(j) / kGrid;
      if (const double v = inner(level, xi1); v > best) {
        best = v;
        best_level = level;
        best_xi1 = xi1;
      }
    }
  }
  // Compass refinement in (level, xi1).
  for (double step = 1.0 / kGrid; step > 1e-9;) {
    bool improved = false;
    const double moves[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
    for (const auto& m : moves) {
      const double level = best_level + m[0];
      const double xi1 = best_xi1 + m[1];
      if (level < 0.0 || level > 1.0 || xi1 < 0.0 || xi1 > kLambdaMax) continue;
      if (const double v = inner(level, xi1); v > best) {
        best = v;
        best_level = level;
        best_xi1 = xi1;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

// Least nondecreasing concave majorant of the tail sums of q, as increments.
std::vector<double> majorant_increments(std::span<const double> q) {
  const std::size_t n = q.size();
  std::vector<Point> pts(n + 1);
  double tail = 0.0;
  double running = 0.0;
  pts[0] = {0.0, 0.0};
  for (std::size_t j = 1; j <= n; ++j) {
    tail += q[n - j];
    running = std::max(running, tail);
    pts[j] = {static_cast<double>(j), running};
  }
  std::vector<Point> hull;
  for (const Point& p : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<double> p(n);
  std::size_t seg = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    while (hull[seg + 1].x < static_cast<double>(j)) ++seg;
    const double slope = (hull[seg + 1].y - hull[seg].y) / (hull[seg + 1].x - hull[seg].x);
    p[n - j] = std::max(0.0, slope);
  }
  return p;
}

bool hj_feasible(std::span<const double> p, std::span<const double> q) {
  if (p[0] < 0.0) return false;
  for (std::size_t m = 1; m < p.size(); ++m) {
    if (p[m] < p[m - 1]) return false;
  }
  double slack = 0.0;
  for (std::size_t m = p.size(); m-- > 0;) {
    slack += p[m] - q[m];
    if (slack < -1e-13) return false;
  }
  return true;
}

}  // namespace

double psi(const StepPath& q) {
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double level = q.values()[k];
    if (level <= 0.0) continue;
    const double b = q.piece_end(k);
    const double lo = std::max(q.zetas()[k], std::sqrt(kLog2 / level));
    if (lo >= b) continue;
    sum += level * (b - lo) - kLog2 * (1.0 / lo - 1.0 / b);
  }
  return -kLog2 + sum;
}

std::vector<double> psi_gradient(std::span<const double> q) {
  if (!in_open_cone(q)) {
    throw Error(ErrorKind::degenerate_input,
                "gradient needs strictly increasing positive coordinates");
  }
  const std::size_t n = q.size();
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> grad(n, 0.0);
  if (q.back() <= kLog2) return grad;

  // x* = inf{x : q(x) > log 2/x^2}, located piece by piece.
  for (std::size_t k = 0; k < n; ++k) {
    const double start = static_cast<double>(k) * h;
    const double end = static_cast<double>(k + 1) * h;
    const double crossing = std::sqrt(kLog2 / q[k]);
    if (crossing >= end) continue;
    if (crossing <= start) {
      for (std::size_t j = k; j < n; ++j) grad[j] = h;
    } else {
      grad[k] = end - crossing;
      for (std::size_t j = k + 1; j < n; ++j) grad[j] = h;
    }
    break;
  }
  return grad;
}

double psi_star(const StepPath& p) {
  const double norm = p.l1_norm();
  if (norm >= 1.0 || p.sup_norm() > 1.0) return kInf;
  return kLog2 / (1.0 - norm);
}

double hopf_objective(double t, const StepPath& q, double lambda) {
  return lambda * t + tail_integral(q, lambda) + barrier(lambda);
}

HopfResult hopf_free_energy(double t, const StepPath& q) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  const auto f = [&](double l) { return hopf_objective(t, q, l); };
  double lo = 0.0;
  double hi = kLambdaMax;
  for (int i = 0; i < kTernaryIters; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  HopfResult r{f(0.0), 0.0, kTernaryIters};
  const double mid = 0.5 * (lo + hi);
  if (const double v = f(mid); v > r.value) r = {v, mid, kTernaryIters};
  return r;
}

double f_t0_closed(double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  return t <= kLog2 ? -kLog2 : t - 2.0 * std::sqrt(t * kLog2);
}

double rem_beta_free_energy(double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorKind::domain_error, "beta must be >= 0");
  const double critical = std::sqrt(2.0 * kLog2);
  return beta <= critical ? kLog2 + 0.5 * beta * beta : critical * beta;
}

double bovier_kurkova(const CovarianceSpec& spec, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::domain_error, "t must be positive");
  const ConcaveHull hull = concave_hull(spec);
  const double x = x_of_t(hull, t);
  return t * hull(x) - (1.0 - x) * kLog2 -
         2.0 * std::sqrt(t * kLog2) * sqrt_slope_integral(hull, x);
}

double two_speed_f_crem(double theta, double c, double t) {
  require_two_speed(theta, c, t);
  const double th2 = theta2_of(theta, c);
  switch (f_crem_regime(theta, c, t)) {
    case 1:
      return -kLog2;
    case 2:
      return c * theta * t - (1.0 - c) * kLog2 - 2.0 * c * std::sqrt(theta * kLog2 * t);
    default:
      return t - 2.0 * std::sqrt(kLog2 * t) *
                     (c * std::sqrt(theta) + (1.0 - c) * std::sqrt(th2));
  }
}

double two_speed_f_var(double theta, double c, double t) {
  require_two_speed(theta, c, t);
  const double th2 = theta2_of(theta, c);
  switch (f_var_regime(theta, c, t)) {
    case 1:
      return -kLog2;
    case 2:
      return theta * t - 2.0 * std::sqrt(kLog2 * theta * t);
    case 3:
      return theta * c * t - kLog2 / (1.0 - c);
    default:
      return t - 2.0 * std::sqrt(kLog2 * th2 * t);
  }
}

TwoSpeedReport two_speed_report(double theta, double c, double t) {
  return {two_speed_f_crem(theta, c, t), two_speed_f_var(theta, c, t),
          f_crem_regime(theta, c, t), f_var_regime(theta, c, t)};
}

double f_var_numeric(const CovarianceSpec& spec, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  const double single = single_jump_search(spec, t);
  const double two_level = two_level_search([&](double level, double xi1, double xi2) {
    const double width = xi2 - xi1;
    return barrier(xi1 + level * width) + t * (xi1 + spec(level) * width);
  });
  return std::max(single, two_level);
}

HopfGeneralResult hopf_general(const CovarianceSpec& spec, double t, const StepPath& q) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain_error, "t must be >= 0");
  // Single jumps p = 1 on [1 - lambda, 1) give int A(p) = lambda for any A.
  const double single = hopf_free_energy(t, q).value;
  const double two_level = two_level_search([&](double level, double xi1, double xi2) {
    const double width = xi2 - xi1;
    const double pq = tail_integral(q, xi1) +
                      level * (tail_integral(q, xi2) - tail_integral(q, xi1));
    return pq + barrier(xi1 + level * width) + t * (xi1 + spec(level) * width);
  });
  return {std::max(single, two_level), is_convex(spec) && is_weak_correlation(spec)};
}

std::vector<double> hj_minimizer(const CovarianceSpec& spec, std::span<const double> q) {
  if (q.empty()) throw Error(ErrorKind::domain_error, "q must be nonempty");
  for (double v : q) {
    if (!std::isfinite(v)) throw Error(ErrorKind::domain_error, "q must be finite");
  }
  const auto a_ext = extend_A(spec);
  std::vector<double> p = majorant_increments(q);
  if (is_convex(spec)) return p;

  const double scale = static_cast<double>(p.size());
  const auto cost = [&](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += a_ext(x);
    return s / scale;
  };
  double best = cost(p);
  if (p.size() <= 3) {
    // Local moves stall on flat stretches of a non-convex A; seed them from
    // the best point of a coarse monotone grid.
    double hi = 0.0;
    double tail = 0.0;
    for (std::size_t m = q.size(); m-- > 0;) hi = std::max(hi, tail += q[m]);
    hi = std::max(hi, *std::max_element(p.begin(), p.end()));
    constexpr int kCells = 120;
    std::vector<double> point(p.size());
    const std::function<void(std::size_t, int)> scan = [&](std::size_t depth, int from) {
      if (depth == point.size()) {
        if (!hj_feasible(point, q)) return;
        if (const double v = cost(point); v < best) {
          best = v;
          p = point;
        }
        return;
      }
      for (int i = from; i <= kCells; ++i) {
        point[depth] = hi * i / kCells;
        scan(depth + 1, i);
      }
    };
    scan(0, 0);
  }
  // Compass search over single and paired (mass-moving) coordinate steps.
  double step = 0.1 * std::max(1.0, *std::max_element(p.begin(), p.end()));
  std::vector<double> trial(p.size());
  while (step > 1e-11) {
    bool improved = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j <= p.size(); ++j) {
        for (double sign : {1.0, -1.0}) {
          if (j == i) continue;
          trial = p;
          trial[i] += sign * step;
          if (j < p.size()) trial[j] -= sign * step;
          if (!hj_feasible(trial, q)) continue;
          if (const double v = cost(trial); v < best - 1e-15) {
            best = v;
            p = trial;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return p;
}

double hj_nonlinearity(const CovarianceSpec& spec, std::span<const double> q) {
  const auto a_ext = extend_A(spec);
  const auto p = hj_minimizer(spec, q);
  double s = 0.0;
  for (double x : p) s += a_ext(x);
  return s / static_cast<double>(p.size());
}

}  // namespace crem
