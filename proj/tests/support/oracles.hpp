#pragma once

// Slow, independent reference computations used only by tests. Nothing here
// calls the library's algorithms; inputs are plain vectors.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct Path {
  std::vector<double> zetas;   // zetas[0] == 0
  std::vector<double> values;  // nondecreasing
  double operator()(double u) const;
};

/// Midpoint rule for -log 2 + int_0^1 (q(u) - log 2/u^2)_+ du.
double psi_quadrature(const Path& q, int points = 1'000'000);

/// Midpoint rule for int_a^b q(u) du.
double integral(const Path& q, double a, double b, int points = 200'000);

/// max over lambda on a uniform grid of lambda t + int_{1-lambda}^1 q - log 2/(1-lambda),
/// tail integrals by exact interval intersection.
double hopf_grid(double t, const Path& q, int points = 1'000'000);

/// sup over constant c in [0, c_max] (grid) of c |p|_1 - psi(c).
double legendre_constant_paths(double p_l1, double c_max, int points = 10'000);

/// Closed forms written out directly.
double f_t0(double t);
double psi_constant(double c);

/// Two-replica Gibbs average of A(overlap/N) for leaf energies H (size 2^N)
/// at weights exp(beta H), by summing over all 4^N pairs.
double gibbs_pair_average(const std::vector<double>& H, int N, double beta,
                          const std::function<double(double)>& A);

/// min over the grid [0, hi]^2 of (A(p0) + A(p1))/2 subject to p0 <= p1,
/// p1 >= q1, p0 + p1 >= q0 + q1.
double hj_grid_two(const std::function<double(double)>& A, double q0, double q1, double hi,
                   double step);

/// Central difference of f at x with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Random step path with at most max_jumps jumps and values in [0, max_level].
Path random_path(std::mt19937_64& rng, int max_jumps, double max_level);

}  // namespace oracle
