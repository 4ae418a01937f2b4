#include "ceshock/verify.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ceshock/analysis.hpp"
#include "ceshock/errors.hpp"
#include "ceshock/remainders.hpp"
#include "ceshock/second_order.hpp"

namespace ceshock {

namespace {

using json = nlohmann::ordered_json;

const std::vector<double> kScalingDeltas{0.4, 0.2, 0.1, 0.05, 0.025};

double sup_diff(const WaveProfile& a, const WaveProfile& b) { return uniform_norm(error_profile(a, b)); }

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Exponent brackets shared by criteria 5 to 7.
struct Bracket {
  const char* model;
  NormKind kind;
  double lo, hi;
};

bool scaling_block(const FluxModel& flux, double a, const std::vector<Bracket>& brackets, json& detail) {
  bool ok = true;
  for (const auto& b : brackets) {
    const auto rep = scaling_fit(flux, a, 0.2, kScalingDeltas,
                                 {ModelSpec::parse(b.model), ModelSpec{ModelKind::relaxation, 0.0}}, b.kind);
    const bool pass = in(rep.fitted_exponent, b.lo, b.hi) && rep.fit_residual < 0.1;
    ok = ok && pass;
    json j;
    j["flux"] = flux.name();
    j["a"] = a;
    j["model"] = b.model;
    j["norm"] = to_string(b.kind);
    j["exponent"] = rep.fitted_exponent;
    j["bracket"] = {b.lo, b.hi};
    j["fit_residual"] = rep.fit_residual;
    j["norms"] = rep.to_json()["norms"];
    j["pass"] = pass;
    detail["fits"].push_back(j);
  }
  return ok;
}

bool c1(json& d) {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  OdeSettings st;
  st.x_max = 400.0;
  const auto p = solve_first_order(s, burgers, ModelKind::relaxation, st);
  double err = 0.0;
  for (std::size_t i = 0; i < p.xs.size(); ++i)
    err = std::max(err, std::abs(p.us[i] - burgers_closed_form(s, burgers, p.xs[i])));
  d["sup_error"] = err;
  d["x_range"] = {p.xs.front(), p.xs.back()};
  d["tolerance"] = 1e-8;
  return err <= 1e-8;
}

bool c2(json& d) {
  bool ok = true;
  double worst = 0.0;
  for (const char* name : {"burgers", "quartic"}) {
    const auto fl = builtin_flux(name);
    const auto s = make_shock(fl, 0.3, 0.1, 1.0);
    for (auto kind : {ModelKind::relaxation, ModelKind::v1, ModelKind::w1}) {
      const auto p = solve_first_order(s, fl, kind, {});
      double w = 0.0;
      for (int k = -10; k <= 10; ++k) {
        const double x = 8.0 * k;
        const auto it = std::lower_bound(p.xs.begin(), p.xs.end(), x - 1e-9);
        const double u_grid = p.us[static_cast<std::size_t>(it - p.xs.begin())];
        w = std::max(w, std::abs(invert_implicit(s, fl, kind, x) - u_grid));
      }
      worst = std::max(worst, w);
      ok = ok && w <= 1e-7;
      d["cases"].push_back({{"flux", name}, {"model", ModelSpec{kind, 0.0}.tag()}, {"max_diff", w}});
    }
  }
  d["max_diff"] = worst;
  d["points"] = 21;
  return ok;
}

bool c3(json& d) {
  const double pairs[5][2] = {{-0.4, 0.4}, {-0.2, 0.3}, {0.0, 0.1}, {0.1, 0.45}, {-0.45, -0.3}};
  bool ok = true;
  for (const char* name : {"burgers", "quartic"}) {
    const auto fl = builtin_flux(name);
    for (double delta : {0.2, 0.1}) {
      const auto s = make_centered_shock(fl, 0.2, delta, 1.0);
      const double a2 = s.a * s.a;
      for (const auto& pr : pairs) {
        const auto fit = fit_phi_mu_bound(s, fl, pr[0] * a2, pr[1] * a2);
        ok = ok && fit.ok;
        d["fits"].push_back({{"flux", name},
                             {"delta", delta},
                             {"mu", {pr[0] * a2, pr[1] * a2}},
                             {"C", fit.C},
                             {"c", fit.c},
                             {"C_fine", fit.C_fine},
                             {"ok", fit.ok}});
      }
    }
  }
  d["margin"] = 1.05;
  return ok;
}

bool c4(json& d) {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const double tol = 1e-10 * s.delta;
  const auto G = gamma_constants(s, burgers, s.delta);
  const auto L = lambda_constants(s, burgers, s.delta);
  const auto gp = solve_phi_mu(s, burgers, G.upper, {});
  const auto gm = solve_phi_mu(s, burgers, G.lower, {});
  const auto lp = solve_phi_mu(s, burgers, L.upper, {});
  const auto lm = solve_phi_mu(s, burgers, L.lower, {});
  const auto w1 = solve_first_order(s, burgers, ModelKind::w1, {});
  const auto v1 = solve_first_order(s, burgers, ModelKind::v1, {});
  const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
  bool ok = true;
  auto record = [&](const char* what, const OrderingReport& r) {
    ok = ok && r.ok;
    d["orderings"].push_back(
        {{"case", what}, {"ok", r.ok}, {"checked", r.checked}, {"strict", r.strict}, {"worst", r.worst}});
  };
  record("gamma: w1", check_ordering(gp, w1, gm, tol));
  record("gamma: relaxation", check_ordering(gp, us, gm, tol));
  record("lambda: v1", check_ordering(lp, v1, lm, tol));
  record("lambda: relaxation", check_ordering(lp, us, lm, tol));
  const auto v2 = solve_v2(s, burgers, {}, {});
  const auto rep = check_sandwich_v2(s, burgers, v2, {});
  record("mu: v2", rep.ordering);
  d["gamma"] = {G.lower, G.upper};
  d["lambda"] = {L.lower, L.upper};
  d["v2_sandwich"] = rep.to_json();
  return ok && rep.ordering_ok;
}

bool c5(json& d) {
  return scaling_block(builtin_flux("burgers"), 1.0,
                       {{"v1", NormKind::uniform, 1.8, 2.2},
                        {"v1", NormKind::weighted, 2.6, 3.4},
                        {"w1", NormKind::uniform, 1.8, 2.2},
                        {"w1", NormKind::weighted, 2.6, 3.4}},
                       d);
}

bool c6(json& d) {
  const std::vector<Bracket> b{{"v1", NormKind::uniform, 1.8, 2.2},
                               {"v1", NormKind::weighted, 2.6, 3.4},
                               {"w1", NormKind::uniform, 1.8, 2.2},
                               {"w1", NormKind::weighted, 2.6, 3.4}};
  const bool q = scaling_block(builtin_flux("quartic"), 1.0, b, d);
  const bool e = scaling_block(builtin_flux("exponential"), 3.0, b, d);
  return q && e;
}

bool c7(json& d) {
  return scaling_block(builtin_flux("burgers"), 1.0,
                       {{"v2", NormKind::uniform, 2.7, 3.3}, {"v2", NormKind::weighted, 3.5, 4.5}}, d);
}

bool c8(json& d) {
  const auto burgers = builtin_flux("burgers");
  bool ok = true;
  for (double delta : {0.4, 0.2, 0.1}) {
    const auto s = make_centered_shock(burgers, 0.0, delta, 1.0);
    const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
    const double e1 = sup_diff(solve_first_order(s, burgers, ModelKind::v1, {}), us);
    const double e2 = sup_diff(solve_v2(s, burgers, {}, {}), us);
    ok = ok && s.lambda == 0.0 && e1 <= 1e-9 && e2 <= 1e-9;
    d["cases"].push_back({{"delta", delta}, {"lambda", s.lambda}, {"v1_vs_relaxation", e1}, {"v2_vs_relaxation", e2}});
  }
  return ok;
}

bool c9(json& d) {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const double r = verify_qn_identity(s, burgers, n, us);
    ok = ok && r < 1e-6;
    d["residuals"].push_back({{"n", n}, {"residual", r}});
  }
  return ok;
}

bool c10(json& d) {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto polys = remainder_sequence(s, burgers, 13);
  const auto rep = remainder_norms(s, polys);

  const ExactPolynomial P = chord_polynomial(s, burgers);
  const Rational lam = (to_rational(s.u_minus) + to_rational(s.u_plus)) / 2;
  const auto R1 = ExactPolynomial::linear(lam);
  const bool exact_ok = polys[0] == R1 && polys[1] == R1 * R1 + P;

  bool normalized_ok = true, ratio_ok = true;
  json outside = json::array();
  for (int n = 1; n <= 12; ++n) {
    const double v = rep[static_cast<std::size_t>(n - 1)].normalized;
    d["normalized"].push_back(v);
    if (!in(v, 1e-4, 1e4)) {
      normalized_ok = false;
      outside.push_back(n);
    }
  }
  for (int n = 2; n <= 12; ++n) {
    const double r = rep[static_cast<std::size_t>(n)].sup_norm /
                     (s.delta * (n + 1) * rep[static_cast<std::size_t>(n - 1)].sup_norm);
    d["one_step_ratio"].push_back(r);
    ratio_ok = ratio_ok && in(r, 0.1, 10.0);
  }
  d["normalized_outside_bracket_at_n"] = outside;
  d["normalized_ok"] = normalized_ok;
  d["one_step_ratio_ok"] = ratio_ok;
  d["exact_R1_R2_ok"] = exact_ok;
  return normalized_ok && ratio_ok && exact_ok;
}

bool c11(json& d) {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const double dx = 0.4;
  std::vector<double> r;
  for (double h : {dx, dx / 2, dx / 4}) r.push_back(v2_residual(s, burgers, h, {}, {}));
  const double o1 = std::log2(r[0] / r[1]), o2 = std::log2(r[1] / r[2]);
  d["dx"] = {dx, dx / 2, dx / 4};
  d["residuals"] = r;
  d["orders"] = {o1, o2};
  return std::min(o1, o2) >= 1.8;
}

struct Check {
  const char* title;
  std::function<bool(json&)> run;
  double time_limit;  // seconds; 0 = none
};

const Check& check(int id) {
  static const std::vector<Check> checks{
      {"closed-form relaxation profile for Burgers", c1, 1.0},
      {"implicit-formula inversion agrees with integration", c2, 0.0},
      {"comparison-profile bound with fitted constants", c3, 0.0},
      {"ordering sandwiches for W1, V1, u_* and V2", c4, 0.0},
      {"first-order scaling, Burgers", c5, 30.0},
      {"first-order scaling, quartic and exponential flux", c6, 0.0},
      {"second-order scaling, Burgers", c7, 60.0},
      {"lambda = 0 collapse of V1 and V2 onto u_*", c8, 0.0},
      {"Q_n identity along u_*", c9, 0.0},
      {"remainder growth and exact R_1, R_2", c10, 0.0},
      {"finite-difference residual of V2 under refinement", c11, 0.0},
  };
  if (id < 1 || id > static_cast<int>(checks.size())) throw ConfigError("unknown criterion " + std::to_string(id));
  return checks[static_cast<std::size_t>(id - 1)];
}

}  // namespace

bool SuiteResult::all_pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

nlohmann::ordered_json SuiteResult::to_json() const {
  json j;
  j["suite"] = suite;
  j["all_pass"] = all_pass();
  j["criteria"] = json::array();
  for (const auto& c : criteria)
    j["criteria"].push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "burgers") return {1, 4, 5, 8};
  if (suite == "general") return {2, 3, 6};
  if (suite == "second_order") return {7, 11};
  if (suite == "remainders") return {9, 10};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw ConfigError("unknown suite '" + suite + "' (expected all, burgers, general, second_order, remainders)");
}

CriterionResult run_criterion(int id) {
  const Check& s = check(id);
  CriterionResult r;
  r.id = id;
  r.title = s.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = s.run(r.detail);
  } catch (const Error& e) {
    r.pass = false;
    r.detail["error"] = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s.time_limit > 0.0) {
    const bool in_time = r.seconds < s.time_limit;
    r.detail["time_limit_s"] = s.time_limit;
    r.detail["within_time_limit"] = in_time;
    r.pass = r.pass && in_time;
  }
  spdlog::info("criterion {}: {} ({:.2f} s)", id, r.pass ? "pass" : "fail", r.seconds);
  return r;
}

SuiteResult run_suite(const std::string& suite) {
  SuiteResult res;
  res.suite = suite;
  for (int id : suite_criteria(suite)) res.criteria.push_back(run_criterion(id));
  return res;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " [" << (r.id < 10 ? " " : "") << r.id << "] " << r.title;
  if (r.detail.contains("error")) os << " -- " << r.detail["error"].get<std::string>();
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  os << buf;
  return os.str();
}

}  // namespace ceshock
