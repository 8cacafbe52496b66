#pragma once

#include <vector>

#include "crem/harness.hpp"

namespace crem::criteria {

std::vector<CheckRecord> closed_forms(const SuiteOptions& opts);
std::vector<CheckRecord> duality(const SuiteOptions& opts);
std::vector<CheckRecord> universality(const SuiteOptions& opts);
std::vector<CheckRecord> two_speed_gap(const SuiteOptions& opts);
std::vector<CheckRecord> mc_convergence(const SuiteOptions& opts);
std::vector<CheckRecord> cascade_identity(const SuiteOptions& opts);
std::vector<CheckRecord> comparison(const SuiteOptions& opts);
std::vector<CheckRecord> lipschitz(const SuiteOptions& opts);
std::vector<CheckRecord> derivatives(const SuiteOptions& opts);

}  // namespace crem::criteria
