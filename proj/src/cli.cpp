#include "logopt/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "logopt/blocks.hpp"
#include "logopt/equilibrium.hpp"
#include "logopt/phaseplane.hpp"
#include "logopt/series.hpp"
#include "logopt/verify.hpp"

namespace logopt {

using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  std::optional<int> grid;
  std::optional<double> mu;
  std::optional<double> m0;
};

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::Config, "field '" + field + "': " + why);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Config, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, "config '" + path + "' is not valid JSON at byte " +
                                       std::to_string(e.byte));
  }
  if (!j.is_object()) config_error("(root)", "expected an object");
  return j;
}

double number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) config_error(key, "expected a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) config_error(key, "expected an integer");
  return j.at(key).get<int>();
}

Params params_from(const json& j, const Flags& f, int default_grid = 512) {
  Params p;
  p.mu = f.mu.value_or(number(j, "mu", p.mu));
  p.grid_n = f.grid.value_or(integer(j, "grid_n", default_grid));
  p.tol_residual = number(j, "tol_residual", p.tol_residual);
  p.tol_integral = number(j, "tol_integral", p.tol_integral);
  validate(p);
  return p;
}

struct ParsedResource {
  PiecewiseConstantResource resource;
  std::optional<BangBangResource> bang_bang;
};

// {"domain": [a, b], "intervals": [...]} or {"domain": [a, b], "constant": v}
ParsedResource resource_from(const json& j) {
  if (!j.contains("resource")) config_error("resource", "missing");
  const json& r = j.at("resource");
  if (r.is_object() && r.contains("constant")) {
    const auto& d = r.contains("domain") ? r.at("domain") : json();
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      config_error("resource.domain", "expected [a, b]");
    if (!r.at("constant").is_number()) config_error("resource.constant", "expected a number");
    const double v = r.at("constant").get<double>();
    if (!(v > 0.0) || v > 1.0) config_error("resource.constant", "expected a value in (0, 1]");
    return {PiecewiseConstantResource::constant(Domain(d[0].get<double>(), d[1].get<double>()), v),
            std::nullopt};
  }
  const ValidResource v = validate(resource_from_json(r));
  return {PiecewiseConstantResource::from(v.resource), v.resource};
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::Config, "cannot write '" + f.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json summary(const EquilibriumSolution& sol, const PiecewiseConstantResource& m) {
  const auto& v = sol.theta.values;
  json ex = json::array();
  for (double x : critical_points(sol)) ex.push_back(x);
  return {{"F", total_population(sol)},
          {"theta_min", *std::min_element(v.begin(), v.end())},
          {"theta_max", *std::max_element(v.begin(), v.end())},
          {"extrema", ex},
          {"m0", m.m0()},
          {"mu", sol.mu},
          {"grid_n", sol.theta.cells()},
          {"iterations", sol.iterations},
          {"residual_norm", sol.residual_norm},
          {"converged", sol.converged}};
}

// Solution CSV to --out when given; summary JSON to stdout.
int solved(const EquilibriumSolution& sol, const PiecewiseConstantResource& m, const Flags& f,
           std::ostream& out) {
  require_converged(sol);
  if (!f.out.empty()) emit(solution_csv(sol, m), f, out);
  out << dump(summary(sol, m));
  return kExitOk;
}

int cmd_solve(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const ParsedResource r = resource_from(j);
  const Params p = params_from(j, f);
  return solved(solve(r.resource, p), r.resource, f, out);
}

int cmd_march(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const ParsedResource r = resource_from(j);
  const Params p = params_from(j, f);
  MarchOptions opt;
  opt.dt = number(j, "dt", opt.dt);
  opt.max_steps = static_cast<long>(number(j, "max_steps", static_cast<double>(opt.max_steps)));
  const GridFunction start = constant_grid(r.resource.domain(), p.grid_n, r.resource.m0());
  return solved(march(r.resource, p, start, opt), r.resource, f, out);
}

int cmd_surface(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const Params p = params_from(j, f);
  const auto s = advantage_surface(number(j, "l_min", 0.1), number(j, "l_max", 8.0),
                                   integer(j, "nl", 50), number(j, "r_min", 0.0),
                                   number(j, "r_max", 1.0), integer(j, "nr", 50), p);
  emit(surface_csv(s), f, out);
  return kExitOk;
}

int cmd_series(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const double m0 = f.m0.value_or(number(j, "m0", 0.05));
  const Params p = params_from(j, f, 4096);
  const int K = integer(j, "K", kSeriesDefaultOrder);
  const SeriesState s = eta_k_compute(m0, K);
  const BangBangResource m(Domain(0.0, 1.0), {{0.0, m0}});
  const double direct = total_population(require_converged(solve(m, p)));
  emit(dump(to_json(s, p.mu, direct)), f, out);
  return kExitOk;
}

int cmd_improve(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const ParsedResource r = resource_from(j);
  const Params p = params_from(j, f, 4096);
  const Improvement imp = improve_resource(r.resource, p);
  json segs = json::array();
  for (const auto& s : imp.m_hat.segments()) segs.push_back({s.left, s.right, s.value});
  emit(dump({{"report", to_json(imp.report)},
             {"m_hat", {{"domain", {imp.m_hat.domain().a(), imp.m_hat.domain().b()}},
                        {"segments", segs}}}}),
       f, out);
  return kExitOk;
}

int cmd_optimize(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  const Params p = params_from(j, f);
  const OptimizeResult r = optimize_small_resource(
      number(j, "domain_length", 1.0), f.m0.value_or(number(j, "m0", 0.05)), p.mu,
      integer(j, "r_max", 2), integer(j, "simplex_grid", 20), p, number(j, "m0_max", 0.1));
  emit(dump(to_json(r)), f, out);
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const json j = load_config(f.config);
  VerifyConfig c;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) config_error("seed", "expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (f.seed) c.seed = *f.seed;
  c.tolerance_scale = number(j, "tolerance_scale", 1.0);
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) config_error("suites", "expected an array of names");
    for (const auto& s : j.at("suites")) {
      if (!s.is_string()) config_error("suites", "expected an array of names");
      c.suites.push_back(s.get<std::string>());
    }
  }
  if (!f.suites.empty()) c.suites = f.suites;
  const json report = run_verify(c);
  emit(dump(report), f, out);
  return report.at("passed").get<bool>() ? kExitOk : kExitVerify;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDomain:
    case ErrorCode::InvalidParams:
    case ErrorCode::OverlappingIntervals:
    case ErrorCode::IntervalOutOfDomain:
    case ErrorCode::EmptyResource:
    case ErrorCode::FullResource:
    case ErrorCode::NonpositiveMu:
    case ErrorCode::OutOfDomain:
    case ErrorCode::ZeroMass:
    case ErrorCode::Config:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

void report_error(std::ostream& err, const std::string& code, const std::string& message,
                  int exit_code) {
  err << json{{"error", code}, {"message", message}, {"exit_code", exit_code}}.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria and optimal resources of the 1D logistic diffusive model", "logopt"};
  app.require_subcommand(1);
  Flags f;

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Flags&, std::ostream&);
  };
  const Entry entries[] = {
      {"solve", "Newton solve; summary JSON, solution CSV to --out", cmd_solve},
      {"march", "time marching to steady state; same outputs as solve", cmd_march},
      {"surface", "advantage function H(l, b) on a grid as CSV", cmd_surface},
      {"series", "perturbation series for m = chi_(0, m0) on (0, 1)", cmd_series},
      {"improve", "one phase-plane surgery step on a fragmented resource", cmd_improve},
      {"optimize", "exhaustive block enumeration for small total resource", cmd_optimize},
      {"verify", "property suites; exit 3 on any failure", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--out", f.out, "output file");
    sub->add_option("--grid", f.grid, "grid cells (grid_n)");
    sub->add_option("--mu", f.mu, "dispersal rate");
    if (std::string(e.name) == "series" || std::string(e.name) == "optimize")
      sub->add_option("--m0", f.m0, "resource fraction");
    if (std::string(e.name) == "verify") {
      sub->add_option("--seed", f.seed, "random seed");
      sub->add_option("--suite", f.suites, "suite name (repeatable)");
    }
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Config", e.what(), kExitConfig);
    return kExitConfig;
  }

  for (auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    try {
      return entry->run(f, out);
    } catch (const Error& e) {
      const int code = exit_code_for(e.code());
      report_error(err, std::string(to_string(e.code())), e.what(), code);
      return code;
    } catch (const json::exception& e) {
      report_error(err, "Config", e.what(), kExitConfig);
      return kExitConfig;
    }
  }
  return kExitConfig;
}

}  // namespace logopt
