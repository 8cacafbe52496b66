#include "crem/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crem/error.hpp"

namespace crem {

namespace {

constexpr double kLog2 = std::numbers::ln2;

std::string at(std::size_t k) { return " at index " + std::to_string(k); }

}  // namespace

StepPath::StepPath(std::vector<double> zetas, std::vector<double> values)
    : zetas_(std::move(zetas)), values_(std::move(values)) {
  if (zetas_.empty() || zetas_.size() != values_.size()) {
    throw Error(ErrorKind::domain_error,
                "zeta and q lists must have equal nonzero length");
  }
  if (zetas_.front() != 0.0) {
    throw Error(ErrorKind::non_monotone_jumps, "first jump point must be 0");
  }
  for (std::size_t k = 1; k < zetas_.size(); ++k) {
    if (!(zetas_[k] > zetas_[k - 1])) {
      throw Error(ErrorKind::non_monotone_jumps,
                  "jump points must be strictly increasing" + at(k));
    }
    if (!(zetas_[k] < 1.0)) {
      throw Error(ErrorKind::non_monotone_jumps,
                  "jump points must lie in [0,1)" + at(k));
    }
  }
  if (!(values_.front() >= 0.0) || !std::isfinite(values_.front())) {
    throw Error(ErrorKind::non_monotone_values,
                "first level must be finite and nonnegative");
  }
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (!(values_[k] >= values_[k - 1]) || !std::isfinite(values_[k])) {
      throw Error(ErrorKind::non_monotone_values,
                  "levels must be finite and nondecreasing" + at(k));
    }
  }
}

double StepPath::operator()(double u) const noexcept {
  auto it = std::upper_bound(zetas_.begin(), zetas_.end(), u);
  if (it == zetas_.begin()) return values_.front();
  return values_[static_cast<std::size_t>(it - zetas_.begin()) - 1];
}

double StepPath::l1_norm() const noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    sum += values_[k] * (piece_end(k) - zetas_[k]);
  }
  return sum;
}

StepPath make_step_path(std::vector<double> zetas, std::vector<double> values) {
  return StepPath(std::move(zetas), std::move(values));
}

StepPath collapse_repeats(const StepPath& p) {
  std::vector<double> zetas{p.zetas()[0]};
  std::vector<double> values{p.values()[0]};
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p.values()[k] == values.back()) continue;
    zetas.push_back(p.zetas()[k]);
    values.push_back(p.values()[k]);
  }
  return StepPath(std::move(zetas), std::move(values));
}

std::vector<double> merged_breakpoints(const StepPath& p, const StepPath& r) {
  std::vector<double> grid;
  grid.reserve(p.size() + r.size());
  std::merge(p.zetas().begin(), p.zetas().end(), r.zetas().begin(),
             r.zetas().end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double l1_distance(const StepPath& p, const StepPath& r) {
  const auto grid = merged_breakpoints(p, r);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double end = i + 1 < grid.size() ? grid[i + 1] : 1.0;
    sum += std::abs(p(grid[i]) - r(grid[i])) * (end - grid[i]);
  }
  return sum;
}

double tail_integral(const StepPath& p, double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::domain_error, "tail length must lie in [0,1)");
  }
  if (lambda == 0.0) return 0.0;
  const double start = 1.0 - lambda;
  double sum = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    const double end = p.piece_end(k);
    if (end <= start) break;
    sum += p.values()[k] * (end - std::max(start, p.zetas()[k]));
  }
  return sum;
}

std::vector<double> equidistant_zetas(std::size_t levels) {
  std::vector<double> zetas(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    zetas[j] = static_cast<double>(j) / static_cast<double>(levels);
  }
  return zetas;
}

StepPath discretize_equidistant(const std::function<double(double)>& f, int M) {
  if (M < 0) throw Error(ErrorKind::domain_error, "M must be nonnegative");
  auto zetas = equidistant_zetas(static_cast<std::size_t>(M) + 1);
  std::vector<double> values(zetas.size());
  std::transform(zetas.begin(), zetas.end(), values.begin(), f);
  return StepPath(std::move(zetas), std::move(values));
}

StepPath combine(double a, const StepPath& p, double b, const StepPath& r) {
  if (a < 0.0 || b < 0.0) {
    throw Error(ErrorKind::domain_error, "combination weights must be >= 0");
  }
  auto grid = merged_breakpoints(p, r);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = a * p(grid[i]) + b * r(grid[i]);
  }
  // Rounding may break monotonicity between nearly equal levels.
  for (std::size_t i = 1; i < values.size(); ++i) {
    values[i] = std::max(values[i], values[i - 1]);
  }
  return StepPath(std::move(grid), std::move(values));
}

bool in_tilde_class(const StepPath& p, double tol) {
  for (std::size_t k = 1; k < p.size(); ++k) {
    const double z = p.zetas()[k];
    const double curve = kLog2 / (z * z);
    if (std::abs(p.values()[k] - curve) <= tol * std::max(1.0, curve)) {
      return true;
    }
  }
  return false;
}

StepPath augment_to_tilde(const StepPath& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::domain_error, "eps must lie in (0,1)");
  }
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p.values()[k] == p.values()[k - 1]) {
      throw Error(ErrorKind::degenerate_input,
                  "levels must be distinct; collapse repeats first");
    }
  }
  if (in_tilde_class(p)) return p;

  std::vector<double> zetas(p.zetas().begin(), p.zetas().end());
  std::vector<double> values(p.values().begin(), p.values().end());
  const auto insert_at = [&](std::size_t pos, double zeta, double value) {
    zetas.insert(zetas.begin() + static_cast<std::ptrdiff_t>(pos), zeta);
    values.insert(values.begin() + static_cast<std::ptrdiff_t>(pos), value);
  };

  // Walk the pieces until the path first reaches the curve log 2 / u^2.
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double start = p.zetas()[k];
    const double end = p.piece_end(k);
    const double level = p.values()[k];
    if (k > 0 && level > kLog2 / (start * start)) {
      // The path jumps over the curve at start: hold the curve value there
      // for a short stretch before continuing at the original level.
      const double width = std::min(eps, 0.5 * (end - start));
      zetas[k] = start + width;
      insert_at(k, start, kLog2 / (start * start));
      return StepPath(std::move(zetas), std::move(values));
    }
    if (level > 0.0) {
      const double crossing = std::sqrt(kLog2 / level);
      if (crossing < end) {
        // Crossing inside the piece: split it there without changing the
        // function.
        insert_at(k + 1, crossing, level);
        return StepPath(std::move(zetas), std::move(values));
      }
    }
  }

  // The path stays below the curve on [0,1): append a final short level.
  const double width = std::min(eps, 0.5 * (1.0 - p.zetas().back()));
  const double zeta = 1.0 - width;
  insert_at(zetas.size(), zeta, kLog2 / (zeta * zeta));
  return StepPath(std::move(zetas), std::move(values));
}

bool in_monotone_cone(std::span<const double> q) noexcept {
  if (q.empty() || !(q[0] >= 0.0)) return false;
  for (std::size_t k = 1; k < q.size(); ++k) {
    if (!(q[k] >= q[k - 1])) return false;
  }
  return true;
}

bool in_open_cone(std::span<const double> q) noexcept {
  if (q.empty() || !(q[0] > 0.0)) return false;
  for (std::size_t k = 1; k < q.size(); ++k) {
    if (!(q[k] > q[k - 1])) return false;
  }
  return true;
}

bool in_dual_cone(std::span<const double> p, double tol) noexcept {
  double tail = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    tail += p[k];
    if (tail < -tol) return false;
  }
  return true;
}

}  // namespace crem
