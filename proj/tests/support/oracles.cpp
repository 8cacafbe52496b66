#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace oracle {

namespace {
const double kLn2 = std::log(2.0);
}

double Path::operator()(double u) const {
  std::size_t k = 0;
  while (k + 1 < zetas.size() && zetas[k + 1] <= u) ++k;
  return values[k];
}

double psi_quadrature(const Path& q, int points) {
  double sum = 0.0;
  const double h = 1.0 / points;
  for (int i = 0; i < points; ++i) {
    const double u = (i + 0.5) * h;
    sum += std::max(q(u) - kLn2 / (u * u), 0.0);
  }
  return -kLn2 + sum * h;
}

double integral(const Path& q, double a, double b, int points) {
  const double h = (b - a) / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) sum += q(a + (i + 0.5) * h);
  return sum * h;
}

double hopf_grid(double t, const Path& q, int points) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double lambda = static_cast<double>(i) / points;
    const double lo = 1.0 - lambda;
    double tail = 0.0;
    for (std::size_t k = 0; k < q.zetas.size(); ++k) {
      const double a = std::max(q.zetas[k], lo);
      const double b = k + 1 < q.zetas.size() ? q.zetas[k + 1] : 1.0;
      if (b > a) tail += q.values[k] * (b - a);
    }
    best = std::max(best, lambda * t + tail - kLn2 / (1.0 - lambda));
  }
  return best;
}

double psi_constant(double c) {
  return c <= kLn2 ? -kLn2 : c - 2.0 * std::sqrt(c * kLn2);
}

double f_t0(double t) { return psi_constant(t); }

double legendre_constant_paths(double p_l1, double c_max, int points) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double c = c_max * i / (points - 1);
    best = std::max(best, c * p_l1 - psi_constant(c));
  }
  return best;
}

double gibbs_pair_average(const std::vector<double>& H, int N, double beta,
                          const std::function<double(double)>& A) {
  const std::size_t n = H.size();
  const double top = *std::max_element(H.begin(), H.end());
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) z += w[i] = std::exp(beta * (H[i] - top));
  double acc = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // Common prefix length of the N-bit labels, most significant bit first.
      const auto x = static_cast<std::uint32_t>(a ^ b);
      const int overlap = x == 0 ? N : std::countl_zero(x) - (32 - N);
      acc += w[a] * w[b] * A(static_cast<double>(overlap) / N);
    }
  }
  return acc / (z * z);
}

double hj_grid_two(const std::function<double(double)>& A, double q0, double q1, double hi,
                   double step) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::round(hi / step));
  for (int i = 0; i <= n; ++i) {
    const double p0 = i * step;
    for (int j = i; j <= n; ++j) {
      const double p1 = j * step;
      if (p1 < q1 - 1e-12 || p0 + p1 < q0 + q1 - 1e-12) continue;
      best = std::min(best, 0.5 * (A(p0) + A(p1)));
    }
  }
  return best;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

Path random_path(std::mt19937_64& rng, int max_jumps, double max_level) {
  std::uniform_int_distribution<int> jumps(0, max_jumps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int M = jumps(rng);
  std::vector<double> z;
  for (int i = 0; i < M; ++i) z.push_back(unit(rng));
  std::sort(z.begin(), z.end());
  Path p{{0.0}, {}};
  for (double x : z) {
    if (x > p.zetas.back() && x < 1.0) p.zetas.push_back(x);
  }
  for (std::size_t i = 0; i < p.zetas.size(); ++i) p.values.push_back(max_level * unit(rng));
  std::sort(p.values.begin(), p.values.end());
  return p;
}

}  // namespace oracle
