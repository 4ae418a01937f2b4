#include "doctest.h"

#include <chrono>
#include <cmath>

#include "ceshock/errors.hpp"
#include "ceshock/second_order.hpp"

using namespace ceshock;

namespace {
double sup_diff(const WaveProfile& a, const WaveProfile& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.us.size(); ++i) m = std::max(m, std::abs(a.us[i] - b.us[i]));
  return m;
}
}  // namespace

TEST_CASE("saddle slope") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const double sl = saddle_slope(s, burgers, Endpoint::left);
  CHECK(sl == doctest::Approx(0.0979583329787294400).epsilon(1e-14));
  CHECK(saddle_slope(s, burgers, Endpoint::right) == doctest::Approx(-0.102128623625220819).epsilon(1e-14));
  for (auto e : {Endpoint::left, Endpoint::right}) {
    const double ue = e == Endpoint::left ? s.u_minus : s.u_plus;
    const double l = 1.0 / (1.0 - s.lambda * burgers.f1(ue));
    const double k = saddle_slope(s, burgers, e);
    CHECK(std::abs(s.lambda * l * k * k + k - chord_dP(s, burgers, ue)) < 1e-12);
  }
  const auto sym = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(saddle_slope(sym, burgers, Endpoint::left) == chord_dP(sym, burgers, sym.u_minus));
  // 1 + 4 lambda l P' < 0 at the node of a strong shock with slow relaxation
  ShockData strong;
  strong.u_minus = 1.5;
  strong.u_plus = 0.5;
  strong.delta = 1.0;
  strong.lambda = 1.0;
  strong.a = 1.05;
  CHECK_THROWS_AS(saddle_slope(strong, burgers, Endpoint::right), DiscriminantError);
}

TEST_CASE("V2 profile invariants and sandwich") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto v2 = solve_v2(s, burgers, {}, {});
  const auto chk = check_profile(v2, 1e-8 * s.delta);
  CHECK_MESSAGE(chk.ok(), chk.message);

  const auto rep = check_sandwich_v2(s, burgers, v2, {});
  CHECK(rep.C_found > 0.1);
  CHECK(rep.C_found < 100.0);
  CHECK(rep.max_K_plus_violation == 0.0);
  CHECK(rep.max_K_minus_violation == 0.0);
  CHECK(rep.ordering_ok);
  CHECK(rep.ordering.strict > v2.xs.size() / 4);
  for (int i = 0; i <= 1000; ++i) {
    const double u = s.u_plus + s.delta * i / 1000.0;
    const double l2 = s.lambda * s.lambda, d2 = s.delta * s.delta;
    CHECK(k_mu(s, burgers, l2 * (1 + rep.C_found * d2), u) > 0.0);
    CHECK(k_mu(s, burgers, l2 * (1 - rep.C_found * d2), u) < 0.0);
  }
  const auto j = rep.to_json();
  CHECK(j.begin().key() == "C_found");
  CHECK(j.contains("ordering_ok"));

  // sup |V2 - u_*| is bounded by the sandwich width
  const double l2 = s.lambda * s.lambda, d2 = s.delta * s.delta;
  const auto pp = solve_phi_mu(s, burgers, l2 * (1 + rep.C_found * d2), {});
  const auto pm = solve_phi_mu(s, burgers, l2 * (1 - rep.C_found * d2), {});
  const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
  CHECK(sup_diff(v2, us) > 1e-8);
  CHECK(sup_diff(v2, us) <= sup_diff(pp, pm));

  const auto phase = check_phase_plane(s, burgers, rep.C_found, {}, {});
  CHECK(phase.ok);
  CHECK(phase.checked > 500);
}

TEST_CASE("lambda = 0 returns the relaxation wave") {
  const auto burgers = builtin_flux("burgers");
  for (double d : {0.4, 0.2, 0.1}) {
    const auto s = make_centered_shock(burgers, 0.0, d, 1.0);
    REQUIRE(s.lambda == 0.0);
    const auto v2 = solve_v2(s, burgers, {}, {});
    const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
    CHECK(sup_diff(v2, us) <= 1e-9);
    CHECK(v2.model_tag() == "v2");
    const auto rep = check_sandwich_v2(s, burgers, v2, {});
    CHECK(rep.C_found == 0.0);
    CHECK(rep.ordering_ok);
  }
}

TEST_CASE("reversal symmetry and negative speed") {
  for (const char* name : {"burgers", "quartic"}) {
    const auto fl = builtin_flux(name);
    const auto s = make_shock(fl, 0.3, 0.1, 1.0);
    const auto v2 = solve_v2(s, fl, {}, {});
    CHECK(reversal_discrepancy(s, fl, v2, {}, {}) < 1e-8);
    // a negative-speed shock goes through the reversed construction
    const auto neg = make_shock(fl, -0.1, -0.3, 1.0);
    const auto vn = solve_v2(neg, fl, {}, {});
    const auto chk = check_profile(vn, 1e-8 * neg.delta);
    CHECK_MESSAGE(chk.ok(), chk.message);
  }
}

TEST_CASE("finite-difference residual converges at second order") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const double r1 = v2_residual(s, burgers, 0.4, {}, {});
  const double r2 = v2_residual(s, burgers, 0.2, {}, {});
  const double r3 = v2_residual(s, burgers, 0.1, {}, {});
  MESSAGE("residuals " << r1 << " " << r2 << " " << r3);
  CHECK(std::log2(r1 / r2) >= 1.8);
  CHECK(std::log2(r2 / r3) >= 1.8);
}

TEST_CASE("shooting settings are validated") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  ShootingSettings bad;
  bad.eta = 0.3;
  CHECK_THROWS_AS(solve_v2(s, burgers, bad, {}), ConfigError);
}
