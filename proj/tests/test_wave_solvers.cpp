#include "doctest.h"

#include <cmath>

#include "ceshock/errors.hpp"
#include "ceshock/wave_solvers.hpp"

using namespace ceshock;

namespace {
double sup_diff(const WaveProfile& a, const WaveProfile& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.us.size(); ++i) m = std::max(m, std::abs(a.us[i] - b.us[i]));
  return m;
}
}  // namespace

TEST_CASE("model tags round-trip") {
  CHECK(ModelSpec::parse("v1").kind == ModelKind::v1);
  CHECK(ModelSpec::parse("phi_mu:0.25") == ModelSpec{ModelKind::phi_mu, 0.25});
  CHECK(ModelSpec::parse(ModelSpec{ModelKind::phi_mu, -0.125}.tag()) == ModelSpec{ModelKind::phi_mu, -0.125});
  CHECK_THROWS_AS(ModelSpec::parse("v3"), ConfigError);
}

TEST_CASE("settings defaults and grid") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto r = resolve({}, s);
  CHECK(r.x_max == doctest::Approx(200.0));
  CHECK(r.grid_dx == doctest::Approx(0.025));
  CHECK(r.tail_tol == doctest::Approx(1e-13 * 0.2 + 1e-15));
  CHECK(r.margin_h == 0.5);
  const auto xs = uniform_grid(1.0, 0.25);
  REQUIRE(xs.size() == 9);
  CHECK(xs[4] == 0.0);
  CHECK(xs.front() == -1.0);
  OdeSettings bad;
  bad.abs_tol = 1e-6;
  bad.rel_tol = 1e-8;
  CHECK_THROWS_AS(resolve(bad, s), ConfigError);
}

TEST_CASE("Burgers closed form") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(burgers_closed_form(s, burgers, 0.0) == doctest::Approx(0.0));
  CHECK(burgers_closed_form(s, burgers, 10.0) == doctest::Approx(-0.0462117157260009758).epsilon(1e-14));
  CHECK(std::abs(burgers_closed_form(s, burgers, 400.0) + 0.1) <= resolve({}, s).tail_tol);
  CHECK_THROWS_AS(burgers_closed_form(s, builtin_flux("quartic"), 1.0), FluxMismatch);
  const auto s2 = make_shock(burgers, 0.3, 0.1, 1.0);
  CHECK(burgers_phi_mu_closed_form(s2, burgers, 0.25, 7.0) == doctest::Approx(0.156449788608452).epsilon(1e-13));
}

TEST_CASE("relaxation profile matches the closed form on [-400, 400]") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  OdeSettings st;
  st.x_max = 400.0;
  const auto p = solve_first_order(s, burgers, ModelKind::relaxation, st);
  double m = 0.0;
  for (std::size_t i = 0; i < p.xs.size(); ++i) m = std::max(m, std::abs(p.us[i] - burgers_closed_form(s, burgers, p.xs[i])));
  CHECK(m < 1e-8);
  CHECK(p.xs.front() == -400.0);
  CHECK(p.xs.back() == 400.0);
  const auto chk = check_profile(p, resolve(st, s).tail_tol);
  CHECK_MESSAGE(chk.ok(), chk.message);
  CHECK(p.us.front() == s.u_minus);
  CHECK(p.us.back() == s.u_plus);
}

TEST_CASE("phi_mu: closed form, identity at lambda^2, margin, rescaling") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  for (double mu : {-0.4, 0.0, 0.04, 0.3}) {
    const auto p = solve_phi_mu(s, burgers, mu, {});
    double m = 0.0;
    for (std::size_t i = 0; i < p.xs.size(); ++i)
      m = std::max(m, std::abs(p.us[i] - burgers_phi_mu_closed_form(s, burgers, mu, p.xs[i])));
    CHECK(m < 1e-8);
  }
  const auto u_star = solve_first_order(s, burgers, ModelKind::relaxation, {});
  CHECK(sup_diff(solve_phi_mu(s, burgers, s.lambda * s.lambda, {}), u_star) < 1e-12);
  CHECK_THROWS_AS(solve_phi_mu(s, burgers, 0.5, {}), MarginError);

  // phi_mu(x) = psi(x / (a^2 - mu)) with psi' = P(psi)
  const auto quartic = builtin_flux("quartic");
  const auto sq = make_shock(quartic, 0.3, 0.1, 1.0);
  auto rs = resolve({}, sq);
  rs.x_max *= 1.5;
  const ScalarWaveCurve psi(sq, quartic, [](double) { return 1.0; }, rs);
  for (double mu : {-0.45, -0.2, 0.0, 0.2, 0.45}) {
    const auto p = solve_phi_mu(sq, quartic, mu, {});
    double m = 0.0;
    for (std::size_t i = 0; i < p.xs.size(); ++i) m = std::max(m, std::abs(p.us[i] - psi.u(p.xs[i] / (1.0 - mu))));
    CHECK(m < 1e-8);
  }
}

TEST_CASE("first-order profiles: invariants, oddness, lambda = 0 collapse") {
  const auto burgers = builtin_flux("burgers");
  const auto sym = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto rel = solve_first_order(sym, burgers, ModelKind::relaxation, {});
  const auto v1 = solve_first_order(sym, burgers, ModelKind::v1, {});
  CHECK(sup_diff(rel, v1) <= 1e-10);
  for (auto kind : {ModelKind::relaxation, ModelKind::v1, ModelKind::w1}) {
    const auto p = solve_first_order(sym, burgers, kind, {});
    const std::size_t n = p.xs.size();
    double odd = 0.0;
    for (std::size_t i = 0; i < n; ++i) odd = std::max(odd, std::abs(p.us[i] + p.us[n - 1 - i]));
    CHECK(odd < 1e-9);
  }
  for (const auto& fl : builtin_fluxes()) {
    const double a = fl.name() == "exponential" ? 3.0 : 1.0;
    const auto s = make_shock(fl, 0.3, 0.1, a);
    for (auto kind : {ModelKind::relaxation, ModelKind::v1, ModelKind::w1}) {
      const auto p = solve_first_order(s, fl, kind, {});
      // the default x_max ends the grid before the tail cut-off distance
      const auto chk = check_profile(p, 1e-8 * s.delta);
      CHECK_MESSAGE(chk.ok(), fl.name() << " " << p.model_tag() << ": " << chk.message);
    }
  }
}

TEST_CASE("tail decay rate") {
  const auto quartic = builtin_flux("quartic");
  const auto s = make_shock(quartic, 0.3, 0.1, 1.0);
  for (auto kind : {ModelKind::relaxation, ModelKind::v1, ModelKind::w1}) {
    const auto p = solve_first_order(s, quartic, kind, {});
    const ModelSpec m{kind, 0.0};
    const double expected = (quartic.f1(s.u_plus) - s.lambda) / diffusion_coefficient(s, quartic, m, s.u_plus);
    // regression of log(u - u_+) over the last decade of the sampled tail
    const double tail = 10.0 * (p.us.back() - s.u_plus);
    REQUIRE(tail > 0.0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < p.xs.size(); ++i) {
      const double d = p.us[i] - s.u_plus;
      if (p.xs[i] > 0 && d > 10 * tail && d < 100 * tail) {
        const double y = std::log(d);
        sx += p.xs[i];
        sy += y;
        sxx += p.xs[i] * p.xs[i];
        sxy += p.xs[i] * y;
        ++cnt;
      }
    }
    REQUIRE(cnt > 10);
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    CHECK(std::abs(slope / expected - 1.0) < 0.05);
  }
}

TEST_CASE("degenerate diffusion") {
  // make_shock rules this out, so the shock is assembled by hand
  const auto burgers = builtin_flux("burgers");
  ShockData s = make_shock(burgers, 0.55, 0.45, 1.0);
  s.a = 0.5;
  CHECK_THROWS_AS(solve_first_order(s, burgers, ModelKind::w1, {}), DegenerateDiffusion);
  CHECK_THROWS_AS(solve_first_order(s, burgers, ModelKind::v1, {}), DegenerateDiffusion);
}

TEST_CASE("implicit inversion agrees with integration") {
  const auto burgers = builtin_flux("burgers");
  const auto sym = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(invert_implicit(sym, burgers, ModelKind::relaxation, 0.0) == 0.0);
  CHECK(invert_implicit(sym, burgers, ModelKind::relaxation, 10.0) ==
        doctest::Approx(-0.0462117157260009758).epsilon(1e-10));
  CHECK_THROWS_AS(invert_implicit(sym, burgers, ModelKind::relaxation, 1e5), BracketError);
  const auto quartic = builtin_flux("quartic");
  const auto s = make_shock(quartic, 0.3, 0.1, 1.0);
  const auto p = solve_first_order(s, quartic, ModelKind::v1, {});
  const auto r = resolve({}, s);
  const ScalarWaveCurve curve(s, quartic,
                              [&](double u) { return diffusion_coefficient(s, quartic, {ModelKind::v1, 0.0}, u); }, r);
  for (int k = -10; k <= 10; ++k) {
    const double x = 15.0 * k;
    CHECK(std::abs(invert_implicit(s, quartic, ModelKind::v1, x) - curve.u(x)) < 1e-7);
  }
}

TEST_CASE("ordering sandwiches for W1, V1 and u_*") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto G = gamma_constants(s, burgers, s.delta);
  const auto L = lambda_constants(s, burgers, s.delta);
  CHECK(G.lower == doctest::Approx(0.01 - 0.04));
  CHECK(G.upper == doctest::Approx(0.09 + 0.04));
  CHECK(L.lower == doctest::Approx(0.02 - 0.04));
  CHECK(L.upper == doctest::Approx(0.06 + 0.04));
  const auto tol = 1e-10 * s.delta;
  const auto gp = solve_phi_mu(s, burgers, G.upper, {}), gm = solve_phi_mu(s, burgers, G.lower, {});
  const auto lp = solve_phi_mu(s, burgers, L.upper, {}), lm = solve_phi_mu(s, burgers, L.lower, {});
  const auto w1 = solve_first_order(s, burgers, ModelKind::w1, {});
  const auto v1 = solve_first_order(s, burgers, ModelKind::v1, {});
  const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
  for (const auto* p : {&w1, &us}) {
    const auto r = check_ordering(gp, *p, gm, tol);
    CHECK(r.ok);
    CHECK(r.strict > p->xs.size() / 4);
  }
  for (const auto* p : {&v1, &us}) {
    const auto r = check_ordering(lp, *p, lm, tol);
    CHECK(r.ok);
  }
  // swapping the bounds must fail
  CHECK_FALSE(check_ordering(gm, w1, gp, tol).ok);
  CHECK_THROWS_AS(gamma_constants(s, burgers, 50.0), MarginError);
}

TEST_CASE("profile interpolation") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  auto p = solve_first_order(s, burgers, ModelKind::relaxation, {});
  const ProfileInterpolant h(p);
  CHECK(std::abs(h(10.0125) - burgers_closed_form(s, burgers, 10.0125)) < 1e-10);
  p.slopes.clear();
  const ProfileInterpolant m(p);
  CHECK(std::abs(m(10.0125) - burgers_closed_form(s, burgers, 10.0125)) < 1e-8);
  CHECK(m(1e6) == p.us.back());
}
