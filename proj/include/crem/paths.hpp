#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace crem {

/// Default perturbation size used by augment_to_tilde.
inline constexpr double kDefaultAugmentEps = 1e-3;

/// A right-continuous, nondecreasing, nonnegative step function on [0,1).
///
/// The path takes value values()[k] on [zetas()[k], zetas()[k+1]) with the
/// convention zetas()[M+1] = 1. The first jump point is always 0, so a
/// constant path has a single level. Adjacent equal levels are allowed.
class StepPath {
 public:
  /// Validates and stores the path. Throws Error(non_monotone_jumps) or
  /// Error(non_monotone_values) naming the first violated invariant.
  StepPath(std::vector<double> zetas, std::vector<double> values);

  /// The zero path q = 0.
  StepPath() : StepPath({0.0}, {0.0}) {}

  static StepPath constant(double c) { return StepPath({0.0}, {c}); }

  std::span<const double> zetas() const noexcept { return zetas_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Number of levels, M + 1.
  std::size_t size() const noexcept { return values_.size(); }
  /// Number of jumps M.
  std::size_t jumps() const noexcept { return values_.size() - 1; }

  /// Right end of piece k (1 for the last piece).
  double piece_end(std::size_t k) const noexcept {
    return k + 1 < zetas_.size() ? zetas_[k + 1] : 1.0;
  }

  /// Value at u in [0,1): the level of the last jump at or before u.
  double operator()(double u) const noexcept;

  double l1_norm() const noexcept;
  /// Largest value q_M (the sup norm, since paths are nondecreasing).
  double sup_norm() const noexcept { return values_.back(); }

  friend bool operator==(const StepPath&, const StepPath&) = default;

 private:
  std::vector<double> zetas_;
  std::vector<double> values_;
};

StepPath make_step_path(std::vector<double> zetas, std::vector<double> values);

/// Merges adjacent pieces carrying bit-identical levels.
StepPath collapse_repeats(const StepPath& p);

/// Sorted union of both paths' jump points (always starts at 0).
std::vector<double> merged_breakpoints(const StepPath& p, const StepPath& r);

/// Exact integral of |p - r| over [0,1).
double l1_distance(const StepPath& p, const StepPath& r);

/// Exact integral of p over [1 - lambda, 1). lambda must lie in [0,1).
double tail_integral(const StepPath& p, double lambda);

/// Samples f at j/(M+1), j = 0..M, producing the equidistant step path.
StepPath discretize_equidistant(const std::function<double(double)>& f, int M);

/// Pointwise combination a*p + b*r on the merged grid. Coefficients must be
/// nonnegative so the result stays in the path cone.
StepPath combine(double a, const StepPath& p, double b, const StepPath& r);

/// True when some level k >= 1 sits exactly on the curve log 2 / zeta_k^2.
bool in_tilde_class(const StepPath& p, double tol = 1e-12);

/// Perturbs p into a nearby path containing a level on the curve
/// log 2 / zeta^2 by inserting at most one jump. Input levels must be
/// distinct (apply collapse_repeats first); Error(degenerate_input) otherwise.
StepPath augment_to_tilde(const StepPath& p, double eps = kDefaultAugmentEps);

/// Cone predicates for coordinate vectors q = (q_0, ..., q_M).
bool in_monotone_cone(std::span<const double> q) noexcept;   // 0 <= q_0 <= ... <= q_M
bool in_open_cone(std::span<const double> q) noexcept;       // 0 <  q_0 <  ... <  q_M
bool in_dual_cone(std::span<const double> p, double tol = 0.0) noexcept;  // tail sums >= 0

/// Equidistant jump points k/(M+1), k = 0..M.
std::vector<double> equidistant_zetas(std::size_t levels);

}  // namespace crem
