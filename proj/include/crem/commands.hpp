#pragma once

#include <string>

#include "crem/io.hpp"

namespace crem {

/// Analytic operations: hopf, psi, psi-star, psi-grad, bk, two-speed, f-var,
/// hj-h. Returns an array with one {t, value, maximizer, regime} record per t
/// (a single record for the t-independent operations).
Json run_analytic(const RunConfig& cfg);

/// Simulation operations: free-energy, overlaps, brw-max, cascade. Returns
/// the formatted output (CSV with header, or a JSON array) ending in '\n'.
/// Identical configs give byte-identical output.
std::string run_simulate(const RunConfig& cfg);

/// Jump points 0 < zeta_1 < ... of the cascade implied by cfg: the explicit
/// zeta list when given, else the jumps of the path.
std::vector<double> cascade_zetas(const RunConfig& cfg);

/// The path a simulation runs at: cfg.path, or the zero path on M
/// equidistant jumps when only M is given.
StepPath simulation_path(const RunConfig& cfg);

}  // namespace crem
