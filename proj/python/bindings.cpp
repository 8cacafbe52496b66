#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crem/analytic.hpp"
#include "crem/covariance.hpp"
#include "crem/error.hpp"
#include "crem/estimators.hpp"
#include "crem/harness.hpp"
#include "crem/io.hpp"
#include "crem/overlaps.hpp"
#include "crem/paths.hpp"

namespace py = pybind11;
using namespace crem;

namespace {

py::dict estimate_dict(const FreeEnergyEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["replicas"] = e.replicas;
  d["method"] = std::string(to_string(e.method));
  d["seed"] = e.seed;
  d["bias_proxy"] = e.bias_proxy;
  d["samples"] = e.samples;
  return d;
}

py::dict scalar_dict(const ScalarEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["replicas"] = e.replicas;
  d["samples"] = e.samples;
  return d;
}

std::vector<double> default_zetas(const StepPath& q, std::optional<std::vector<double>> zetas) {
  if (zetas) return *zetas;
  auto z = q.zetas();
  return {z.begin() + 1, z.end()};
}

}  // namespace

PYBIND11_MODULE(_crem, m) {
  m.doc() = "Continuous random energy model: free energies, duals and estimators";

  // Messages start with the error kind, e.g. "NonMonotoneValues: ...".
  py::register_exception<Error>(m, "CremError", PyExc_ValueError);

  py::class_<StepPath>(m, "StepPath")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("zetas"),
           py::arg("values"))
      .def(py::init<>())
      .def_static("constant", &StepPath::constant, py::arg("c"))
      .def_property_readonly("zetas",
                             [](const StepPath& p) {
                               auto z = p.zetas();
                               return std::vector<double>(z.begin(), z.end());
                             })
      .def_property_readonly("values",
                             [](const StepPath& p) {
                               auto v = p.values();
                               return std::vector<double>(v.begin(), v.end());
                             })
      .def("__call__", &StepPath::operator(), py::arg("u"))
      .def("l1_norm", &StepPath::l1_norm)
      .def("sup_norm", &StepPath::sup_norm)
      .def("__len__", &StepPath::size)
      .def("__eq__", [](const StepPath& a, const StepPath& b) { return a == b; })
      .def("__repr__", [](const StepPath& p) { return "StepPath(" + path_id(p) + ")"; });

  py::class_<CovarianceSpec>(m, "Covariance")
      .def_static("identity", &CovarianceSpec::identity)
      .def_static("power", &CovarianceSpec::power, py::arg("p"))
      .def_static("two_speed", &CovarianceSpec::two_speed, py::arg("theta"), py::arg("c"))
      .def_static("rem", &CovarianceSpec::rem)
      .def_static(
          "piecewise_linear",
          [](const std::vector<std::pair<double, double>>& knots) {
            std::vector<Point> pts;
            for (auto [x, y] : knots) pts.push_back({x, y});
            return CovarianceSpec::piecewise_linear(std::move(pts));
          },
          py::arg("knots"))
      .def_static(
          "from_json",
          [](const std::string& text) { return covariance_from_json(Json::parse(text)); },
          py::arg("text"))
      .def("to_json", [](const CovarianceSpec& s) { return covariance_to_json(s).dump(); })
      .def("__call__", &CovarianceSpec::operator(), py::arg("x"))
      .def("is_convex", [](const CovarianceSpec& s) { return is_convex(s); })
      .def("is_weak_correlation", [](const CovarianceSpec& s) { return is_weak_correlation(s); })
      .def_property_readonly("id", &CovarianceSpec::id)
      .def("__repr__", [](const CovarianceSpec& s) { return "Covariance(" + s.id() + ")"; });

  m.def("psi", &psi, py::arg("q"));
  m.def("psi_star", &psi_star, py::arg("p"));
  m.def(
      "psi_gradient", [](const std::vector<double>& q) { return psi_gradient(q); },
      py::arg("q"));
  m.def(
      "hopf",
      [](double t, const StepPath& q) {
        auto r = hopf_free_energy(t, q);
        return py::make_tuple(r.value, r.maximizer_lambda);
      },
      py::arg("t"), py::arg("q") = StepPath{},
      "Returns (value, maximizing lambda).");
  m.def("f_t0", &f_t0_closed, py::arg("t"));
  m.def("rem_beta", &rem_beta_free_energy, py::arg("beta"));
  m.def("bovier_kurkova", &bovier_kurkova, py::arg("cov"), py::arg("t"));
  m.def(
      "two_speed",
      [](double theta, double c, double t) {
        auto r = two_speed_report(theta, c, t);
        py::dict d;
        d["f_crem"] = r.f_crem;
        d["f_var"] = r.f_var;
        d["gap"] = r.f_var - r.f_crem;
        d["regime_crem"] = r.regime_crem;
        d["regime_var"] = r.regime_var;
        return d;
      },
      py::arg("theta"), py::arg("c"), py::arg("t"));
  m.def("f_var_numeric", &f_var_numeric, py::arg("cov"), py::arg("t"));
  m.def(
      "hopf_general",
      [](const CovarianceSpec& s, double t, const StepPath& q) {
        auto r = hopf_general(s, t, q);
        return py::make_tuple(r.value, r.theorem_applies);
      },
      py::arg("cov"), py::arg("t"), py::arg("q") = StepPath{},
      "Returns (value, whether the value is the limiting free energy).");
  m.def(
      "hj_nonlinearity",
      [](const CovarianceSpec& s, const std::vector<double>& q) { return hj_nonlinearity(s, q); },
      py::arg("cov"), py::arg("q"));

  m.def(
      "free_energy_direct",
      [](const CovarianceSpec& s, int N, double t, const StepPath& q, std::size_t replicas,
         std::uint64_t seed, int K, std::optional<std::vector<double>> zetas, unsigned threads) {
        DirectConfig cfg{s, N, default_zetas(q, zetas), K, t, q, replicas, seed, threads};
        return estimate_dict(estimate_free_energy_direct(cfg));
      },
      py::arg("cov"), py::arg("N"), py::arg("t"), py::arg("q") = StepPath{},
      py::arg("replicas") = 200, py::arg("seed") = 0, py::arg("K") = kDefaultBranching,
      py::arg("zetas") = std::nullopt, py::arg("threads") = 1);
  m.def(
      "free_energy_nested",
      [](const CovarianceSpec& s, int N, double t, const StepPath& q, int outer, int inner,
         std::uint64_t seed, std::optional<std::vector<double>> zetas, unsigned threads) {
        NestedConfig cfg{s, N, default_zetas(q, zetas), t, q, outer, inner, seed, threads};
        return estimate_dict(estimate_free_energy_nested(cfg));
      },
      py::arg("cov"), py::arg("N"), py::arg("t"), py::arg("q") = StepPath{},
      py::arg("outer") = 200, py::arg("inner") = kDefaultInner, py::arg("seed") = 0,
      py::arg("zetas") = std::nullopt, py::arg("threads") = 1);
  m.def(
      "overlap_moments",
      [](const CovarianceSpec& s, int N, double t, const StepPath& q, std::size_t replicas,
         std::uint64_t seed, int K, std::optional<std::vector<double>> zetas, unsigned threads) {
        OverlapConfig cfg{s, N, default_zetas(q, zetas), K, t, q, replicas, seed, threads};
        auto r = gibbs_overlap_moments(cfg);
        py::dict d;
        d["dF_dt"] = r.dF_dt;
        d["dF_dt_err"] = r.dF_dt_err;
        d["dF_dq"] = r.dF_dq;
        d["dF_dq_err"] = r.dF_dq_err;
        d["replicas"] = r.replicas;
        return d;
      },
      py::arg("cov"), py::arg("N"), py::arg("t"), py::arg("q") = StepPath{},
      py::arg("replicas") = 200, py::arg("seed") = 0, py::arg("K") = kDefaultBranching,
      py::arg("zetas") = std::nullopt, py::arg("threads") = 1);
  m.def(
      "brw_max",
      [](int N, std::size_t replicas, std::uint64_t seed, unsigned threads) {
        return scalar_dict(brw_max_estimate(N, replicas, seed, threads));
      },
      py::arg("N"), py::arg("replicas") = 200, py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "cascade_functional",
      [](const std::vector<double>& zetas, int K, std::size_t replicas, std::uint64_t seed,
         unsigned threads) {
        auto r = cascade_functional_estimate(zetas, K, replicas, seed, threads);
        py::dict d = scalar_dict(r.estimate);
        d["truncation_proxy"] = r.truncation_proxy;
        return d;
      },
      py::arg("zetas"), py::arg("K") = kDefaultBranching, py::arg("replicas") = 200,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::optional<std::uint64_t> seed, unsigned threads) {
        SuiteOptions opts;
        opts.seed_override = seed;
        opts.threads = threads;
        return run_suite(name, opts).to_json().dump();
      },
      py::arg("name"), py::arg("seed") = std::nullopt, py::arg("threads") = 1,
      "Runs a verification suite and returns its report as a JSON string.");
}
