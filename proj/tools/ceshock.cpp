#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ceshock/analysis.hpp"
#include "ceshock/errors.hpp"
#include "ceshock/io.hpp"
#include "ceshock/remainders.hpp"
#include "ceshock/verify.hpp"

using namespace ceshock;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitAssert = 4;

// Values common to every subcommand; filled from the config file, then
// overridden by whatever flags were passed.
struct RunConfig {
  std::string flux = "burgers";
  std::vector<double> flux_coeffs;
  double flux_M = 2.0;
  std::optional<double> u_minus, u_plus, center, delta;
  double a = 1.0;
  OdeSettings ode;
  ShootingSettings shooting;
  std::string out;
  std::string format = "csv";

  // subcommand specific
  std::vector<std::string> models;
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05, 0.025};
  std::string norm = "uniform";
  std::optional<double> c, x_min;
  int n_max = 12;
  std::string load;
};

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  RunConfig c;
  try {
    take(j, "flux", c.flux);
    take(j, "flux_coeffs", c.flux_coeffs);
    take(j, "flux_M", c.flux_M);
    take(j, "u_minus", c.u_minus);
    take(j, "u_plus", c.u_plus);
    take(j, "center", c.center);
    take(j, "delta", c.delta);
    take(j, "a", c.a);
    take(j, "out", c.out);
    take(j, "format", c.format);
    take(j, "deltas", c.deltas);
    take(j, "norm", c.norm);
    take(j, "c", c.c);
    take(j, "x_min", c.x_min);
    take(j, "n_max", c.n_max);
    take(j, "load", c.load);
    if (j.contains("model")) c.models = {j.at("model").get<std::string>()};
    take(j, "models", c.models);
    if (j.contains("ode")) {
      const auto& o = j.at("ode");
      take(o, "rel_tol", c.ode.rel_tol);
      take(o, "abs_tol", c.ode.abs_tol);
      take(o, "x_max", c.ode.x_max);
      take(o, "tail_tol", c.ode.tail_tol);
      take(o, "grid_dx", c.ode.grid_dx);
      take(o, "margin_h", c.ode.margin_h);
    }
    if (j.contains("shooting")) {
      const auto& s = j.at("shooting");
      take(s, "eta", c.shooting.eta);
      take(s, "u_steps", c.shooting.u_steps);
      take(s, "comparison_C", c.shooting.comparison_C);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

// Flag storage; a flag overrides the config only when it was given.
struct Flags {
  std::string config;
  std::string flux;
  std::vector<double> flux_coeffs;
  double flux_M = 0, ul = 0, ur = 0, center = 0, delta = 0, a = 0;
  double rel_tol = 0, abs_tol = 0, x_max = 0, tail_tol = 0, grid_dx = 0, margin_h = 0;
  double eta = 0, comparison_C = 0;
  std::string out, format;
  std::vector<std::string> models;
  std::vector<double> deltas;
  std::string norm;
  double c = 0, x_min = 0;
  int n_max = 0;
  std::string load;
  std::string assert_range;
  std::string suite = "all";
  std::string json_path;
  std::string fault;
};

void add_state_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--flux", f.flux, "builtin flux: burgers, quartic, exponential");
  cmd->add_option("--flux-coeffs", f.flux_coeffs, "polynomial flux coefficients, lowest degree first")->delimiter(',');
  cmd->add_option("--flux-M", f.flux_M, "state bound for a coefficient flux");
  cmd->add_option("--ul,--u-minus", f.ul, "left state u_-");
  cmd->add_option("--ur,--u-plus", f.ur, "right state u_+");
  cmd->add_option("--center", f.center, "shock center (u_- + u_+)/2");
  cmd->add_option("--delta", f.delta, "shock strength u_- - u_+");
  cmd->add_option("--a", f.a, "relaxation speed");
  cmd->add_option("--rel-tol", f.rel_tol);
  cmd->add_option("--abs-tol", f.abs_tol);
  cmd->add_option("--x-max", f.x_max);
  cmd->add_option("--tail-tol", f.tail_tol);
  cmd->add_option("--grid-dx", f.grid_dx);
  cmd->add_option("--margin-h", f.margin_h);
  cmd->add_option("--out,-o", f.out, "output file (stdout if omitted)");
  cmd->add_option("--format", f.format, "csv or json");
}

bool given(const CLI::App* cmd, const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; }

RunConfig merge(const CLI::App* cmd, const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    try {
      c = from_json(json::parse(io::read_file(f.config)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
  }
  if (given(cmd, "--flux")) {
    c.flux = f.flux;
    c.flux_coeffs.clear();
  }
  if (given(cmd, "--flux-coeffs")) c.flux_coeffs = f.flux_coeffs;
  if (given(cmd, "--flux-M")) c.flux_M = f.flux_M;
  const bool endpoints = given(cmd, "--ul") || given(cmd, "--ur");
  const bool centered = given(cmd, "--center") || given(cmd, "--delta");
  if (endpoints && centered) throw ConfigError("give either --ul/--ur or --center/--delta, not both");
  if (endpoints) {
    c.center.reset();
    c.delta.reset();
    if (given(cmd, "--ul")) c.u_minus = f.ul;
    if (given(cmd, "--ur")) c.u_plus = f.ur;
  }
  if (centered) {
    c.u_minus.reset();
    c.u_plus.reset();
    if (given(cmd, "--center")) c.center = f.center;
    if (given(cmd, "--delta")) c.delta = f.delta;
  }
  if (given(cmd, "--a")) c.a = f.a;
  if (given(cmd, "--rel-tol")) c.ode.rel_tol = f.rel_tol;
  if (given(cmd, "--abs-tol")) c.ode.abs_tol = f.abs_tol;
  if (given(cmd, "--x-max")) c.ode.x_max = f.x_max;
  if (given(cmd, "--tail-tol")) c.ode.tail_tol = f.tail_tol;
  if (given(cmd, "--grid-dx")) c.ode.grid_dx = f.grid_dx;
  if (given(cmd, "--margin-h")) c.ode.margin_h = f.margin_h;
  if (given(cmd, "--eta")) c.shooting.eta = f.eta;
  if (given(cmd, "--comparison-C")) c.shooting.comparison_C = f.comparison_C;
  if (given(cmd, "--out")) c.out = f.out;
  if (given(cmd, "--format")) c.format = f.format;
  if (given(cmd, "--model")) c.models = f.models;
  if (given(cmd, "--deltas")) c.deltas = f.deltas;
  if (given(cmd, "--norm")) c.norm = f.norm;
  if (given(cmd, "--c")) c.c = f.c;
  if (given(cmd, "--x-min")) c.x_min = f.x_min;
  if (given(cmd, "--n-max")) c.n_max = f.n_max;
  if (given(cmd, "--load")) c.load = f.load;
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json, got '" + c.format + "'");
  return c;
}

FluxModel make_flux(const RunConfig& c) {
  if (!c.flux_coeffs.empty()) return FluxModel::polynomial("polynomial", c.flux_coeffs, c.flux_M);
  return builtin_flux(c.flux);
}

ShockData make_state(const RunConfig& c, const FluxModel& flux) {
  const bool endpoints = c.u_minus || c.u_plus;
  const bool centered = c.center || c.delta;
  if (endpoints && centered) throw ConfigError("give either u_minus/u_plus or center/delta, not both");
  if (endpoints) {
    if (!c.u_minus || !c.u_plus) throw ConfigError("both u_minus and u_plus are required");
    return make_shock(flux, *c.u_minus, *c.u_plus, c.a);
  }
  if (!c.center || !c.delta) throw ConfigError("the end states are missing: give u_minus/u_plus or center/delta");
  return make_centered_shock(flux, *c.center, *c.delta, c.a);
}

// CSV plus a metadata sidecar, or a single JSON document.
void emit(const RunConfig& c, const std::string& csv, json meta) {
  if (c.format == "json") {
    meta["csv"] = csv;
    const std::string text = meta.dump(2) + "\n";
    if (c.out.empty()) {
      std::cout << text;
    } else {
      io::write_file(c.out, text);
    }
    return;
  }
  if (c.out.empty()) {
    std::cout << csv;
    return;
  }
  io::write_file(c.out, csv);
  io::write_file(c.out + ".json", meta.dump(2) + "\n");
}

int cmd_wave(const RunConfig& c) {
  const auto flux = make_flux(c);
  const auto shock = make_state(c, flux);
  const ModelSpec model = ModelSpec::parse(c.models.empty() ? "relaxation" : c.models.front());
  const auto p = solve_model(shock, flux, model, c.ode, c.shooting);
  emit(c, io::profile_csv(p), io::profile_metadata(p, flux.name(), resolve(c.ode, shock)));
  return 0;
}

int cmd_compare(const RunConfig& c) {
  const auto flux = make_flux(c);
  const auto shock = make_state(c, flux);
  if (c.models.size() != 2) throw ConfigError("compare needs exactly two models, e.g. --model v1 --model relaxation");
  const ModelSpec ma = ModelSpec::parse(c.models[0]), mb = ModelSpec::parse(c.models[1]);
  const auto pa = c.load.empty() ? solve_model(shock, flux, ma, c.ode, c.shooting)
                                 : io::load_profile_csv(c.load, shock, ma);
  const auto pb = solve_model(shock, flux, mb, c.ode, c.shooting);
  const auto e = error_profile(pa, pb);
  const auto rs = resolve(c.ode, shock);
  const double rate = c.c.value_or(default_weight_rate(shock.a, c.ode.margin_h));
  const double x_min = c.x_min.value_or(rs.grid_dx);

  json meta;
  meta["model_pair"] = {e.model_pair.first, e.model_pair.second};
  meta["flux"] = flux.name();
  meta["shock"] = io::shock_json(shock);
  meta["settings"] = io::settings_json(rs);
  meta["loaded"] = !c.load.empty();
  meta["uniform_norm"] = uniform_norm(e);
  meta["weighted_norm"] = weighted_norm(e, rate, x_min);
  meta["weight_rate"] = rate;
  meta["x_min"] = x_min;
  meta["near_origin_ok"] = near_origin_bound(e, x_min);
  emit(c, io::error_csv(e), meta);
  return 0;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("--assert expects lo:hi, got '" + s + "'");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("--assert expects two numbers lo:hi, got '" + s + "'");
  }
}

int cmd_scaling(const RunConfig& c, const std::string& assert_range) {
  const auto flux = make_flux(c);
  if (c.u_minus || c.u_plus) throw ConfigError("scaling takes a center and a list of deltas, not end states");
  std::optional<std::pair<double, double>> bracket;
  if (!assert_range.empty()) bracket = parse_range(assert_range);
  std::vector<std::string> tags = c.models;
  if (tags.empty()) tags = {"v1"};
  if (tags.size() == 1) tags.push_back("relaxation");
  if (tags.size() != 2) throw ConfigError("scaling compares two models");
  ScalingOptions opts;
  opts.c = c.c;
  opts.x_min = c.x_min;
  opts.ode = c.ode;
  opts.shooting = c.shooting;
  const auto rep = scaling_fit(flux, c.a, c.center.value_or(0.2), c.deltas,
                               {ModelSpec::parse(tags[0]), ModelSpec::parse(tags[1])}, parse_norm_kind(c.norm), opts);
  json meta = rep.to_json();
  meta["flux"] = flux.name();
  meta["a"] = c.a;
  meta["center"] = c.center.value_or(0.2);
  if (bracket) meta["assert"] = {bracket->first, bracket->second};
  emit(c, rep.to_csv(), meta);
  if (bracket && !(rep.fitted_exponent >= bracket->first && rep.fitted_exponent <= bracket->second)) {
    std::cerr << "fitted exponent " << io::format_double(rep.fitted_exponent) << " outside [" << bracket->first
              << ", " << bracket->second << "]\n";
    return kExitAssert;
  }
  return 0;
}

int cmd_remainders(const RunConfig& c) {
  const auto flux = make_flux(c);
  const auto shock = make_state(c, flux);
  const auto rows = remainder_table(shock, flux, c.n_max);
  json meta;
  meta["flux"] = flux.name();
  meta["shock"] = io::shock_json(shock);
  meta["n_max"] = c.n_max;
  meta["method"] = flux.is_polynomial() ? "exact" : "series";
  emit(c, io::remainder_csv(rows), meta);
  return 0;
}

int cmd_verify(const Flags& f) {
  if (!f.fault.empty()) {
    if (f.fault != "chord-sign") throw ConfigError("unknown fault '" + f.fault + "' (expected chord-sign)");
    testing::set_chord_sign_fault(true);
  }
  const auto result = run_suite(f.suite);
  for (const auto& r : result.criteria) std::cout << format_line(r) << '\n';
  std::cout << (result.all_pass() ? "all criteria passed" : "some criteria failed") << '\n';
  if (!f.json_path.empty()) io::write_file(f.json_path, result.to_json().dump(2) + "\n");
  return result.all_pass() ? 0 : 1;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("ceshock");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("CESHOCK_LOG");
  const std::string level = env ? env : "warn";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::warn);
    if (level != "warn") spdlog::warn("unknown CESHOCK_LOG level '{}', using warn", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Traveling-wave profiles of relaxation and Chapman-Enskog models"};
  app.require_subcommand(1);
  Flags f;

  auto* wave = app.add_subcommand("wave", "compute one profile");
  add_state_options(wave, f);
  wave->add_option("--model", f.models, "relaxation, v1, w1, v2 or phi_mu(<mu>)")->expected(1);
  wave->add_option("--eta", f.eta, "saddle offset fraction for v2");

  auto* compare = app.add_subcommand("compare", "pointwise difference of two profiles");
  add_state_options(compare, f);
  compare->add_option("--model", f.models, "two model tags; the first may be replaced by --load")->expected(1, 2);
  compare->add_option("--load", f.load, "profile CSV used in place of the first model")->check(CLI::ExistingFile);
  compare->add_option("--c", f.c, "weight rate");
  compare->add_option("--x-min", f.x_min, "inner cutoff of the weighted norm");
  compare->add_option("--eta", f.eta);

  auto* scaling = app.add_subcommand("scaling", "log-log fit of the difference norm against delta");
  add_state_options(scaling, f);
  scaling->add_option("--model", f.models, "model A, optionally model B (default relaxation)")->expected(1, 2);
  scaling->add_option("--deltas", f.deltas, "strictly decreasing shock strengths")->delimiter(',');
  scaling->add_option("--norm", f.norm, "uniform or weighted");
  scaling->add_option("--c", f.c, "weight rate");
  scaling->add_option("--x-min", f.x_min, "inner cutoff of the weighted norm");
  scaling->add_option("--assert", f.assert_range, "exit 4 unless the exponent is in lo:hi");
  scaling->add_option("--eta", f.eta);

  auto* remainders = app.add_subcommand("remainders", "remainder polynomial table");
  add_state_options(remainders, f);
  remainders->add_option("--n-max", f.n_max, "highest order");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--suite", f.suite, "all, burgers, general, second_order or remainders");
  verify->add_option("--json", f.json_path, "write a JSON report");
  verify->add_option("--inject-fault", f.fault, "chord-sign: flip the sign of the chord function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(f);
    CLI::App* cmd = app.get_subcommands().front();
    const RunConfig c = merge(cmd, f);
    if (*wave) return cmd_wave(c);
    if (*compare) return cmd_compare(c);
    if (*scaling) return cmd_scaling(c, f.assert_range);
    return cmd_remainders(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
