#pragma once

#include <span>
#include <vector>

#include "crem/covariance.hpp"
#include "crem/paths.hpp"

namespace crem {

/// Psi(q) = -log 2 + int_0^1 (q(u) - log 2/u^2)_+ du, evaluated exactly.
double psi(const StepPath& q);

/// Gradient of Psi at q = (q_0..q_M) on the equidistant grid zeta_k = k/(M+1).
/// q must be strictly increasing and positive; Error(degenerate_input) otherwise.
std::vector<double> psi_gradient(std::span<const double> q);

/// Convex dual of Psi: log 2/(1 - |p|_1), or +infinity when |p|_1 >= 1 or
/// sup p > 1.
double psi_star(const StepPath& p);

struct HopfResult {
  double value;
  double maximizer_lambda;
  int iterations;
};

/// lambda t + int_{1-lambda}^1 q - log 2/(1 - lambda).
double hopf_objective(double t, const StepPath& q, double lambda);

/// sup over lambda in [0,1) of hopf_objective by ternary search.
HopfResult hopf_free_energy(double t, const StepPath& q);

/// f(t, 0): -log 2 for t <= log 2, t - 2 sqrt(t log 2) above.
double f_t0_closed(double t);

/// REM free energy at inverse temperature beta.
double rem_beta_free_energy(double beta);

/// t A^(x(t)) - (1 - x(t)) log 2 - 2 sqrt(t log 2) int_0^x(t) sqrt(A^').
double bovier_kurkova(const CovarianceSpec& spec, double t);

struct TwoSpeedReport {
  double f_crem;
  double f_var;
  int regime_crem;  // 1..3
  int regime_var;   // 1..4
};

/// Limiting free energy of the two-speed model (three regimes).
double two_speed_f_crem(double theta, double c, double t);
/// Closed-form sup of the naive variational formula (four regimes).
double two_speed_f_var(double theta, double c, double t);
TwoSpeedReport two_speed_report(double theta, double c, double t);

/// sup over p with sup p <= 1 of -log 2/(1 - |p|_1) + t int A(p), searched over
/// single jumps and the two-level family.
double f_var_numeric(const CovarianceSpec& spec, double t);

struct HopfGeneralResult {
  double value;
  /// False when A is not convex with A <= id; the value is then only a
  /// lower bound for the variational formula, not a free energy.
  bool theorem_applies;
};

/// sup over step p (sup p <= 1, |p|_1 < 1) of
/// int p q + t int A(p) - log 2/(1 - |p|_1).
HopfGeneralResult hopf_general(const CovarianceSpec& spec, double t, const StepPath& q);

/// inf over monotone p >= 0 with tail sums of p - q nonnegative of
/// mean_m A_ext(p_m). Error(unbounded_slope) for rem.
double hj_nonlinearity(const CovarianceSpec& spec, std::span<const double> q);

/// Minimizing p for hj_nonlinearity.
std::vector<double> hj_minimizer(const CovarianceSpec& spec, std::span<const double> q);

}  // namespace crem
