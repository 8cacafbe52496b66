#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "crem/commands.hpp"
#include "crem/error.hpp"
#include "crem/harness.hpp"
#include "crem/io.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

// FILE, inline JSON, or a bare covariance kind such as "rem".
crem::Json json_argument(const std::string& arg, bool bare_kind) {
  if (std::filesystem::exists(arg)) return crem::read_json_file(arg);
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return crem::Json::parse(arg);
    } catch (const crem::Json::parse_error& e) {
      throw crem::Error(crem::ErrorKind::config_error, e.what());
    }
  }
  if (bare_kind) return crem::Json{{"kind", arg}};
  throw crem::Error(crem::ErrorKind::config_error, "cannot open " + arg);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw crem::Error(crem::ErrorKind::config_error, "cannot write " + out);
  f << text;
}

struct Flags {
  std::string config;
  std::string cov;
  std::string path;
  std::vector<double> t;
  int N = 0;
  int M = 0;
  int K = 0;
  int inner = 0;
  int outer = 0;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string method;
  double theta = 0.0;
  double c = 0.0;
  std::vector<double> zetas;
  std::vector<double> q;
  unsigned threads = 1;
  bool fresh_seed = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free energy of the continuous random energy model: analytic formulas, "
               "Monte Carlo estimators and verification suites."};
  app.require_subcommand(1);
  Flags f;
  std::string operation;

  app.add_option("--config", f.config, "JSON run config; explicit flags override it");
  auto* o_cov = app.add_option("--cov", f.cov, "covariance: JSON file, inline JSON or kind");
  auto* o_path = app.add_option("--path", f.path, "step path: JSON file or inline JSON");
  auto* o_t = app.add_option("--t", f.t, "time values (comma separated)")->delimiter(',');
  auto* o_N = app.add_option("--N", f.N, "hypercube depth");
  auto* o_M = app.add_option("--M", f.M, "number of path jumps (zero path on equidistant grid)");
  auto* o_K = app.add_option("--K", f.K, "cascade branching for the direct method");
  auto* o_inner = app.add_option("--inner", f.inner, "nested inner samples");
  auto* o_outer = app.add_option("--outer", f.outer, "nested outer replicas");
  auto* o_reps = app.add_option("--replicas", f.replicas, "disorder replicas");
  auto* o_seed = app.add_option("--seed", f.seed, "64-bit seed");
  auto* o_out = app.add_option("--out", f.out, "output file (default stdout)");
  auto* o_format = app.add_option("--format", f.format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_method = app.add_option("--method", f.method, "direct or nested")
                       ->check(CLI::IsMember({"direct", "nested"}));
  auto* o_theta = app.add_option("--theta", f.theta, "two-speed slope parameter");
  auto* o_c = app.add_option("--c", f.c, "two-speed breakpoint");
  auto* o_zeta = app.add_option("--zeta", f.zetas, "cascade jump points (comma separated)")
                     ->delimiter(',');
  auto* o_q = app.add_option("--q", f.q, "coordinate vector q_0..q_M (comma separated)")
                  ->delimiter(',');
  auto* o_threads = app.add_option("--threads", f.threads, "worker threads (0 = all cores)");
  app.add_flag("--fresh-seed", f.fresh_seed, "verify: draw a random seed override");

  auto* analytic = app.add_subcommand("analytic", "evaluate a closed form or variational formula");
  analytic->add_option("operation", operation, "hopf|psi|psi-star|psi-grad|bk|two-speed|f-var|hj-h")
      ->required()
      ->check(CLI::IsMember(
          {"hopf", "psi", "psi-star", "psi-grad", "bk", "two-speed", "f-var", "hj-h"}));
  auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo estimator");
  simulate->add_option("operation", operation, "free-energy|overlaps|brw-max|cascade")
      ->required()
      ->check(CLI::IsMember({"free-energy", "overlaps", "brw-max", "cascade"}));
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("operation", operation, "suite name")->required();
  for (auto* sub : {analytic, simulate, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    crem::RunConfig cfg;
    if (!f.config.empty()) cfg = crem::run_config_from_json(crem::read_json_file(f.config));
    cfg.command = app.got_subcommand(analytic)   ? "analytic"
                  : app.got_subcommand(simulate) ? "simulate"
                                                 : "verify";
    cfg.operation = operation;
    if (cfg.command == "simulate" && f.config.empty() && !o_format->count()) cfg.format = "csv";
    if (o_cov->count()) cfg.covariance = crem::covariance_from_json(json_argument(f.cov, true));
    if (o_path->count()) cfg.path = crem::path_from_json(json_argument(f.path, false));
    if (o_t->count()) cfg.t = f.t;
    if (o_N->count()) cfg.N = f.N;
    if (o_M->count()) cfg.M = f.M;
    if (o_K->count()) cfg.K = f.K;
    if (o_inner->count()) cfg.inner = f.inner;
    if (o_outer->count()) cfg.outer = f.outer;
    if (o_reps->count()) cfg.replicas = f.replicas;
    if (o_seed->count()) cfg.seed = f.seed;
    if (o_out->count()) cfg.out = f.out;
    if (o_format->count()) cfg.format = f.format;
    if (o_method->count()) cfg.method = f.method;
    if (o_theta->count()) cfg.theta = f.theta;
    if (o_c->count()) cfg.c = f.c;
    if (o_zeta->count()) cfg.zetas = f.zetas;
    if (o_q->count()) cfg.q = f.q;
    if (o_threads->count()) cfg.threads = f.threads;
    if (cfg.command == "analytic" && cfg.operation == "f-var" && !o_cov->count() &&
        f.config.empty()) {
      cfg.covariance = crem::CovarianceSpec::two_speed(cfg.theta, cfg.c);
    }
    crem::validate_run_config(cfg);

    if (cfg.command == "analytic") {
      emit(crem::run_analytic(cfg).dump(2) + "\n", cfg.out);
      return 0;
    }
    if (cfg.command == "simulate") {
      emit(crem::run_simulate(cfg), cfg.out);
      return 0;
    }

    crem::SuiteOptions opts;
    opts.threads = cfg.threads;
    if (f.fresh_seed) {
      std::random_device rd;
      opts.seed_override = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    } else if (cfg.seed) {
      opts.seed_override = cfg.seed;
    }
    const auto report = crem::run_suite(cfg.operation, opts);
    crem::Json j = report.to_json();
    if (opts.seed_override) j["seed_override"] = *opts.seed_override;
    emit(j.dump(2) + "\n", cfg.out);
    for (const auto& c : report.checks) {
      std::cerr << (c.pass ? "PASS " : "FAIL ") << report.suite << '/' << c.name
                << "  observed=" << crem::format_double(c.observed)
                << " expected=" << crem::format_double(c.expected) << '\n';
    }
    return report.pass() ? 0 : kExitCheckFailed;
  } catch (const crem::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
