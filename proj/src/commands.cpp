#include "crem/commands.hpp"

#include <cmath>
#include <sstream>

#include "crem/analytic.hpp"
#include "crem/error.hpp"
#include "crem/estimators.hpp"
#include "crem/overlaps.hpp"

namespace crem {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::config_error, what);
}

std::vector<double> coordinates(const RunConfig& cfg) {
  if (!cfg.q.empty()) return cfg.q;
  return {cfg.path.values().begin(), cfg.path.values().end()};
}

const std::vector<double>& t_values(const RunConfig& cfg) {
  if (cfg.t.empty()) config_error(cfg.operation + " needs at least one --t value");
  return cfg.t;
}

Json record(double t, Json value, Json maximizer, Json regime) {
  return Json{{"t", t}, {"value", std::move(value)}, {"maximizer", std::move(maximizer)},
              {"regime", std::move(regime)}};
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::vector<double> cascade_zetas(const RunConfig& cfg) {
  if (!cfg.zetas.empty()) return cfg.zetas;
  const StepPath p = simulation_path(cfg);
  return {p.zetas().begin() + 1, p.zetas().end()};
}

StepPath simulation_path(const RunConfig& cfg) {
  if (cfg.path.jumps() > 0 || cfg.M == 0) return cfg.path;
  auto zetas = equidistant_zetas(static_cast<std::size_t>(cfg.M) + 1);
  std::vector<double> values(zetas.size(), cfg.path.values().front());
  return StepPath(std::move(zetas), std::move(values));
}

Json run_analytic(const RunConfig& cfg) {
  const std::string& op = cfg.operation;
  Json out = Json::array();
  if (op == "hopf") {
    for (double t : t_values(cfg)) {
      const auto r = hopf_free_energy(t, cfg.path);
      out.push_back(record(t, r.value, r.maximizer_lambda,
                           r.maximizer_lambda > 0.0 ? "interior" : "boundary"));
    }
  } else if (op == "psi") {
    out.push_back(record(0.0, psi(cfg.path), nullptr, nullptr));
  } else if (op == "psi-star") {
    const double v = psi_star(cfg.path);
    out.push_back(record(0.0, std::isinf(v) ? Json("inf") : Json(v), nullptr,
                         std::isinf(v) ? "outside-domain" : "finite"));
  } else if (op == "psi-grad") {
    out.push_back(record(0.0, psi_gradient(coordinates(cfg)), nullptr, nullptr));
  } else if (op == "bk") {
    for (double t : t_values(cfg)) {
      out.push_back(record(t, bovier_kurkova(cfg.covariance, t), nullptr, nullptr));
    }
  } else if (op == "two-speed") {
    for (double t : t_values(cfg)) {
      const auto r = two_speed_report(cfg.theta, cfg.c, t);
      Json j = record(t, r.f_crem, nullptr,
                      Json{{"f_crem", r.regime_crem}, {"f_var", r.regime_var}});
      j["f_crem"] = r.f_crem;
      j["f_var"] = r.f_var;
      j["gap"] = r.f_var - r.f_crem;
      out.push_back(std::move(j));
    }
  } else if (op == "f-var") {
    for (double t : t_values(cfg)) {
      out.push_back(record(t, f_var_numeric(cfg.covariance, t), nullptr, nullptr));
    }
  } else if (op == "hj-h") {
    const auto q = coordinates(cfg);
    out.push_back(record(0.0, hj_nonlinearity(cfg.covariance, q),
                         hj_minimizer(cfg.covariance, q), nullptr));
  } else {
    config_error("unknown analytic operation \"" + op + "\"");
  }
  return out;
}

std::string run_simulate(const RunConfig& cfg) {
  if (!cfg.seed) config_error("simulate requires --seed");
  const std::uint64_t seed = *cfg.seed;
  const bool csv = cfg.format == "csv";
  const std::string& op = cfg.operation;
  std::ostringstream os;
  Json rows = Json::array();

  if (op == "free-energy") {
    const StepPath q = simulation_path(cfg);
    const auto zetas = cascade_zetas(cfg);
    if (csv) os << csv_header() << '\n';
    for (double t : t_values(cfg)) {
      FreeEnergyEstimate e;
      if (cfg.method == "nested") {
        NestedConfig n{cfg.covariance, cfg.N, zetas, t, q, cfg.outer, cfg.inner, seed,
                       cfg.threads};
        e = estimate_free_energy_nested(n);
      } else if (cfg.method == "direct") {
        DirectConfig d{cfg.covariance, cfg.N, zetas, cfg.K, t, q, cfg.replicas, seed,
                       cfg.threads, false};
        e = estimate_free_energy_direct(d);
      } else {
        config_error("method must be direct or nested");
      }
      if (csv) {
        os << csv_row(e) << '\n';
      } else {
        Json j{{"method", std::string(to_string(e.method))},
               {"N", e.params.N},
               {"M", e.params.M},
               {"t", e.params.t},
               {"cov", e.params.cov},
               {"path", e.params.path},
               {"K", e.params.K},
               {"inner", e.params.inner},
               {"outer", e.params.outer},
               {"replicas", e.replicas},
               {"seed", e.seed},
               {"mean", e.mean},
               {"stderr", e.std_error}};
        j["bias_proxy"] = e.bias_proxy ? Json(*e.bias_proxy) : Json(nullptr);
        rows.push_back(std::move(j));
      }
    }
  } else if (op == "overlaps") {
    const StepPath q = simulation_path(cfg);
    if (csv) os << "N,M,t,cov,path,K,replicas,seed,dF_dt,dF_dt_stderr,dF_dq,dF_dq_stderr\n";
    for (double t : t_values(cfg)) {
      OverlapConfig o{cfg.covariance, cfg.N, cascade_zetas(cfg), cfg.K, t, q, cfg.replicas,
                      seed, cfg.threads};
      const auto m = gibbs_overlap_moments(o);
      if (csv) {
        os << cfg.N << ',' << q.jumps() << ',' << format_double(t) << ','
           << cfg.covariance.id() << ',' << path_id(q) << ',' << cfg.K << ',' << m.replicas
           << ',' << seed << ',' << format_double(m.dF_dt) << ','
           << format_double(m.dF_dt_err) << ',' << join(m.dF_dq) << ','
           << join(m.dF_dq_err) << '\n';
      } else {
        rows.push_back({{"N", cfg.N}, {"M", q.jumps()}, {"t", t},
                        {"cov", cfg.covariance.id()}, {"path", path_id(q)}, {"K", cfg.K},
                        {"replicas", m.replicas}, {"seed", seed}, {"dF_dt", m.dF_dt},
                        {"dF_dt_stderr", m.dF_dt_err}, {"dF_dq", m.dF_dq},
                        {"dF_dq_stderr", m.dF_dq_err}});
      }
    }
  } else if (op == "brw-max") {
    const auto b = brw_max_estimate(cfg.N, cfg.replicas, seed, cfg.threads);
    if (csv) {
      os << "N,replicas,seed,mean,stderr\n"
         << cfg.N << ',' << b.replicas << ',' << seed << ',' << format_double(b.mean) << ','
         << format_double(b.std_error) << '\n';
    } else {
      rows.push_back({{"N", cfg.N}, {"replicas", b.replicas}, {"seed", seed},
                      {"mean", b.mean}, {"stderr", b.std_error}});
    }
  } else if (op == "cascade") {
    const auto zetas = cascade_zetas(cfg);
    const auto c = cascade_functional_estimate(zetas, cfg.K, cfg.replicas, seed, cfg.threads);
    if (csv) {
      os << "M,zeta,K,replicas,seed,mean,stderr,truncation_proxy\n"
         << zetas.size() << ',' << join(zetas) << ',' << cfg.K << ','
         << c.estimate.replicas << ',' << seed << ',' << format_double(c.estimate.mean) << ','
         << format_double(c.estimate.std_error) << ',' << format_double(c.truncation_proxy)
         << '\n';
    } else {
      rows.push_back({{"M", zetas.size()}, {"zeta", zetas}, {"K", cfg.K},
                      {"replicas", c.estimate.replicas}, {"seed", seed},
                      {"mean", c.estimate.mean}, {"stderr", c.estimate.std_error},
                      {"truncation_proxy", c.truncation_proxy}});
    }
  } else {
    config_error("unknown simulate operation \"" + op + "\"");
  }

  if (!csv) os << rows.dump(2) << '\n';
  return os.str();
}

}  // namespace crem
