#include "doctest.h"

#include <cmath>

#include "ceshock/errors.hpp"
#include "ceshock/flux_model.hpp"

using namespace ceshock;

TEST_CASE("builtin fluxes and their derivatives") {
  const auto burgers = builtin_flux("burgers");
  const auto expo = builtin_flux("exponential");
  const auto quartic = builtin_flux("quartic");
  CHECK(burgers.f2(0.5) == doctest::Approx(1.0));
  CHECK(expo.f1(0.0) == doctest::Approx(1.0));
  CHECK(quartic.f2(0.0) == doctest::Approx(1.0));
  CHECK(builtin_fluxes().size() >= 3);
  for (const auto& fl : builtin_fluxes()) {
    CHECK(fl.M() == 2.0);
    CHECK(fl.convexity_bound() > 0.0);
    // f1 matches a centered difference of f on a 101-point grid
    for (int i = 0; i <= 100; ++i) {
      const double u = -2.0 + 4.0 * i / 100.0, h = 1e-5;
      const double fd = (fl.f(u + h) - fl.f(u - h)) / (2 * h);
      CHECK(std::abs(fd - fl.f1(u)) <= 1e-6 * std::max(1.0, std::abs(fl.f1(u))));
    }
  }
  CHECK_THROWS_AS(builtin_flux("cubic"), ConfigError);
}

TEST_CASE("non-convex flux is rejected") {
  CHECK_THROWS_AS(FluxModel::polynomial("cubic", std::vector<double>{0, 0, 0, 1}, 2.0), ConvexityError);
}

TEST_CASE("make_shock: Rankine-Hugoniot and admissibility") {
  const auto burgers = builtin_flux("burgers");
  auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(s.lambda == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.delta == doctest::Approx(0.2));
  s = make_shock(burgers, 0.3, 0.1, 1.0);
  CHECK(s.lambda == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(make_shock(burgers, -0.1, 0.1, 1.0), AdmissibilityError);
  try {
    make_shock(burgers, -0.1, 0.1, 1.0);
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("admissib") != std::string::npos);
  }
  CHECK_THROWS_AS(make_shock(burgers, 0.9, 0.5, 1.0), SubcharacteristicError);
  CHECK_THROWS_AS(make_shock(burgers, 2.5, 0.5, 5.0), ConfigError);

  const auto quartic = builtin_flux("quartic");
  CHECK(make_shock(quartic, 0.3, 0.1, 1.0).lambda == doctest::Approx(0.2033333333333333333).epsilon(1e-14));
  const auto expo = builtin_flux("exponential");
  CHECK(make_shock(expo, 0.3, 0.1, 3.0).lambda == doctest::Approx(1.2234394475017774).epsilon(1e-14));
}

TEST_CASE("chord function") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(chord_P(s, burgers, 0.0) == doctest::Approx(-0.005).epsilon(1e-14));
  CHECK(chord_P(s, burgers, s.u_minus) == 0.0);
  CHECK(chord_P(s, burgers, s.u_plus) == 0.0);

  for (const auto& fl : builtin_fluxes()) {
    const double a = fl.name() == "exponential" ? 3.0 : 1.0;
    const auto sh = make_shock(fl, 0.3, 0.1, a);
    CHECK(chord_P(sh, fl, sh.u_minus) == 0.0);
    CHECK(chord_P(sh, fl, sh.u_plus) == 0.0);
    CHECK(fl.f1(sh.u_plus) < sh.lambda);
    CHECK(sh.lambda < fl.f1(sh.u_minus));
    const double C = 2.0 * fl.max_f2(sh.u_plus, sh.u_minus);
    for (int i = 1; i < 1000; ++i) {
      const double u = sh.u_plus + sh.delta * i / 1000.0;
      const double p = chord_P(sh, fl, u);
      CHECK(p < 0.0);
      CHECK(std::abs(p) <= C * sh.delta * std::abs(u - sh.u_minus));
    }
  }
}

TEST_CASE("fault injection flips the chord sign") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  testing::set_chord_sign_fault(true);
  CHECK(chord_P(s, burgers, 0.0) > 0.0);
  testing::set_chord_sign_fault(false);
  CHECK(chord_P(s, burgers, 0.0) < 0.0);
}

TEST_CASE("reflected flux") {
  const auto q = builtin_flux("quartic");
  const auto g = q.reflected();
  for (double v : {-1.5, -0.2, 0.0, 0.7}) {
    CHECK(g.f(v) == doctest::Approx(q.f(-v)));
    CHECK(g.f1(v) == doctest::Approx(-q.f1(-v)));
    CHECK(g.f2(v) == doctest::Approx(q.f2(-v)));
  }
  REQUIRE(g.is_polynomial());
  CHECK((*g.exact_coeffs())[2] == Rational(1, 2));
}
