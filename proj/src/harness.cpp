#include "crem/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "criteria.hpp"
#include "crem/error.hpp"

namespace crem {

namespace {

using SuiteFn = std::function<std::vector<CheckRecord>(const SuiteOptions&)>;

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"analytic-closed-forms", criteria::closed_forms},
      {"duality", criteria::duality},
      {"universality", criteria::universality},
      {"two-speed-gap", criteria::two_speed_gap},
      {"mc-convergence", criteria::mc_convergence},
      {"comparison", criteria::comparison},
      {"lipschitz", criteria::lipschitz},
      {"derivatives", criteria::derivatives},
      {"cascade-identity", criteria::cascade_identity},
  };
  return suites;
}

}  // namespace

bool SuiteReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

Json SuiteReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"expected", c.expected},
                    {"observed", c.observed},
                    {"tolerance", c.tolerance},
                    {"provenance", c.provenance},
                    {"pass", c.pass},
                    {"detail", c.detail}});
  }
  return Json{{"suite", suite}, {"pass", pass()}, {"checks", list}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "analytic-closed-forms", "duality",    "universality", "two-speed-gap",
      "mc-convergence",        "comparison", "lipschitz",    "derivatives",
      "cascade-identity"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opts) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) {
    throw Error(ErrorKind::unknown_suite, "no suite named \"" + std::string(name) + "\"");
  }
  SuiteReport report{std::string(name), it->second(opts)};
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  return report;
}

}  // namespace crem
