#include "crem/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "crem/error.hpp"

namespace crem {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::config_error, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    config_error(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) config_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) config_error(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

template <class T>
T integer(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    config_error(std::string(what) + " must be an integer");
  }
  return j.get<T>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) config_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json path_to_json(const StepPath& p) {
  return Json{{"zeta", std::vector<double>(p.zetas().begin(), p.zetas().end())},
              {"q", std::vector<double>(p.values().begin(), p.values().end())}};
}

StepPath path_from_json(const Json& j) {
  if (!j.is_object()) config_error("path must be a JSON object");
  auto zetas = number_list(field(j, "zeta"), "zeta");
  auto values = number_list(field(j, "q"), "q");
  return make_step_path(std::move(zetas), std::move(values));
}

Json covariance_to_json(const CovarianceSpec& spec) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, cov::Identity>) {
          return Json{{"kind", "identity"}};
        } else if constexpr (std::is_same_v<T, cov::Power>) {
          return Json{{"kind", "power"}, {"p", v.p}};
        } else if constexpr (std::is_same_v<T, cov::TwoSpeed>) {
          return Json{{"kind", "two_speed"}, {"theta", v.theta}, {"c", v.c}};
        } else if constexpr (std::is_same_v<T, cov::PiecewiseLinear>) {
          Json knots = Json::array();
          for (const Point& k : v.knots) knots.push_back({k.x, k.y});
          return Json{{"kind", "piecewise_linear"}, {"knots", knots}};
        } else {
          return Json{{"kind", "rem"}};
        }
      },
      spec.variant());
}

CovarianceSpec covariance_from_json(const Json& j) {
  if (!j.is_object()) config_error("covariance must be a JSON object");
  const std::string kind = text(field(j, "kind"), "kind");
  if (kind == "identity") return CovarianceSpec::identity();
  if (kind == "rem") return CovarianceSpec::rem();
  if (kind == "power") return CovarianceSpec::power(number(field(j, "p"), "p"));
  if (kind == "two_speed") {
    return CovarianceSpec::two_speed(number(field(j, "theta"), "theta"),
                                     number(field(j, "c"), "c"));
  }
  if (kind == "piecewise_linear") {
    const Json& knots = field(j, "knots");
    if (!knots.is_array()) config_error("knots must be an array");
    std::vector<Point> pts;
    for (const auto& k : knots) {
      if (!k.is_array() || k.size() != 2) config_error("each knot must be [x, y]");
      pts.push_back({number(k[0], "knot x"), number(k[1], "knot y")});
    }
    return CovarianceSpec::piecewise_linear(std::move(pts));
  }
  config_error("unknown covariance kind \"" + kind + "\"");
}

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) config_error("cannot open " + file);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_error(file + ": " + e.what());
  }
}

Json run_config_to_json(const RunConfig& cfg) {
  Json j{{"command", cfg.command},
         {"operation", cfg.operation},
         {"covariance", covariance_to_json(cfg.covariance)},
         {"path", path_to_json(cfg.path)},
         {"t", cfg.t},
         {"N", cfg.N},
         {"M", cfg.M},
         {"K", cfg.K},
         {"inner", cfg.inner},
         {"outer", cfg.outer},
         {"replicas", cfg.replicas},
         {"out", cfg.out},
         {"format", cfg.format},
         {"method", cfg.method},
         {"theta", cfg.theta},
         {"c", cfg.c},
         {"zeta", cfg.zetas},
         {"q", cfg.q},
         {"threads", cfg.threads}};
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) config_error("run config must be a JSON object");
  static const std::set<std::string> known{
      "command", "operation", "covariance", "path",   "t",     "N",     "M",
      "K",       "inner",     "outer",      "replicas", "seed", "out",   "format",
      "method",  "theta",     "c",          "zeta",   "q",     "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) config_error("unknown field \"" + key + "\"");
  }
  RunConfig cfg;
  if (j.contains("command")) cfg.command = text(j["command"], "command");
  if (j.contains("operation")) cfg.operation = text(j["operation"], "operation");
  if (j.contains("covariance")) cfg.covariance = covariance_from_json(j["covariance"]);
  if (j.contains("path")) cfg.path = path_from_json(j["path"]);
  if (j.contains("t")) cfg.t = number_list(j["t"], "t");
  if (j.contains("N")) cfg.N = integer<int>(j["N"], "N");
  if (j.contains("M")) cfg.M = integer<int>(j["M"], "M");
  if (j.contains("K")) cfg.K = integer<int>(j["K"], "K");
  if (j.contains("inner")) cfg.inner = integer<int>(j["inner"], "inner");
  if (j.contains("outer")) cfg.outer = integer<int>(j["outer"], "outer");
  if (j.contains("replicas")) cfg.replicas = integer<std::size_t>(j["replicas"], "replicas");
  if (j.contains("seed") && !j["seed"].is_null()) {
    cfg.seed = integer<std::uint64_t>(j["seed"], "seed");
  }
  if (j.contains("out")) cfg.out = text(j["out"], "out");
  if (j.contains("format")) cfg.format = text(j["format"], "format");
  if (j.contains("method")) cfg.method = text(j["method"], "method");
  if (j.contains("theta")) cfg.theta = number(j["theta"], "theta");
  if (j.contains("c")) cfg.c = number(j["c"], "c");
  if (j.contains("zeta")) cfg.zetas = number_list(j["zeta"], "zeta");
  if (j.contains("q")) cfg.q = number_list(j["q"], "q");
  if (j.contains("threads")) cfg.threads = integer<unsigned>(j["threads"], "threads");
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  if (cfg.command != "analytic" && cfg.command != "simulate" && cfg.command != "verify") {
    config_error("unknown command \"" + cfg.command + "\"");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    config_error("format must be csv or json");
  }
  if (cfg.command == "simulate" && !cfg.seed) config_error("simulate requires --seed");
  if (cfg.method != "direct" && cfg.method != "nested") {
    config_error("method must be direct or nested");
  }
}

std::string csv_header() {
  return "method,N,M,t,cov,path,K,inner,outer,replicas,seed,mean,stderr,bias_proxy";
}

std::string csv_row(const FreeEnergyEstimate& e) {
  std::ostringstream os;
  const auto& p = e.params;
  os << to_string(e.method) << ',' << p.N << ',' << p.M << ',' << format_double(p.t) << ','
     << p.cov << ',' << p.path << ',' << p.K << ',' << p.inner << ',' << p.outer << ','
     << e.replicas << ',' << e.seed << ',' << format_double(e.mean) << ','
     << format_double(e.std_error) << ','
     << (e.bias_proxy ? format_double(*e.bias_proxy) : std::string());
  return os.str();
}

}  // namespace crem
