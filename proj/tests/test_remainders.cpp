#include "doctest.h"

#include <cmath>

#include "ceshock/errors.hpp"
#include "ceshock/remainders.hpp"

using namespace ceshock;

TEST_CASE("hand-derived R1 and R2 for Burgers") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto R = remainder_sequence(s, burgers, 2);
  const ExactPolynomial P = chord_polynomial(s, burgers);
  const Rational lam = (to_rational(0.3) + to_rational(0.1)) / 2;
  const auto R1 = ExactPolynomial::linear(lam);
  CHECK(R[0] == R1);
  CHECK(R[1] == R1 * R1 + P);
  CHECK(R[0].degree() == 1);
  CHECK(R[1].degree() == 2);

  const auto sym = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto Rs = remainder_sequence(sym, burgers, 2);
  CHECK(Rs[1].eval(0.0) == doctest::Approx(-0.2 * 0.2 / 8).epsilon(1e-15));
}

TEST_CASE("recursion consistency, degrees and endpoint values") {
  for (const char* name : {"burgers", "quartic"}) {
    const auto fl = builtin_flux(name);
    const auto s = make_shock(fl, 0.3, 0.1, 1.0);
    const auto R = remainder_sequence(s, fl, 10);
    const ExactPolynomial P = chord_polynomial(s, fl);
    const ExactPolynomial dP = P.derivative();
    const int d = P.degree();
    const Rational um = to_rational(s.u_minus), up = to_rational(s.u_plus);
    CHECK(P(um) == 0);
    CHECK(P(up) == 0);
    for (std::size_t k = 0; k < R.size(); ++k) {
      CHECK(R[k].degree() == static_cast<int>(k + 1) * (d - 1));
      if (k + 1 < R.size()) {
        CHECK(R[k + 1] == (P * R[k]).derivative());
        CHECK(R[k + 1](um) == dP(um) * R[k](um));
        CHECK(R[k + 1](up) == dP(up) * R[k](up));
      }
    }
  }
}

TEST_CASE("sup norms: hand values, homogeneity, growth") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto rep = remainder_norms(s, remainder_sequence(s, burgers, 14));
  REQUIRE(rep.size() == 14);
  CHECK(rep[0].sup_norm == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(rep[1].sup_norm == doctest::Approx(0.01).epsilon(1e-14));
  // independent high-precision evaluation of sup |R_n| on [-0.1, 0.1]
  const double expected[] = {0.1, 0.01, 0.001, 1e-4, 1.8149573509840141e-5, 4.25e-6,
                             1.0200661061810245e-6, 3.1e-7, 9.3022335664514017e-8, 3.455e-8,
                             1.2474929903947438e-8, 5.461e-9, 2.3082374666854976e-9, 1.16196125e-9};
  for (int n = 0; n < 14; ++n) CHECK(rep[n].sup_norm == doctest::Approx(expected[n]).epsilon(1e-12));
  for (const auto& r : rep) {
    CHECK(r.gamma_factor == 0.0);
    CHECK(r.gamma_n_times_norm == 0.0);
  }
  CHECK(rep[5].normalized == doctest::Approx(9.2230902777777778e-5).epsilon(1e-12));
  for (int n = 2; n <= 12; ++n) {
    const double ratio = rep[n].sup_norm / (s.delta * (n + 1) * rep[n - 1].sup_norm);
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 10.0);
  }

  const auto half = make_shock(burgers, 0.05, -0.05, 1.0);
  const auto rh = remainder_norms(half, remainder_sequence(half, burgers, 8));
  for (int n = 1; n <= 8; ++n)
    CHECK(rh[n - 1].sup_norm == doctest::Approx(rep[n - 1].sup_norm * std::pow(0.5, n)).epsilon(1e-12));

  const auto s2 = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto r2 = remainder_norms(s2, remainder_sequence(s2, burgers, 3));
  CHECK(r2[2].gamma_factor == doctest::Approx(std::pow(0.2 / 0.96, 3)));
}

TEST_CASE("order cap") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK_THROWS_AS(remainder_sequence(s, burgers, 25), OverflowError);
  CHECK_NOTHROW(remainder_sequence(s, burgers, 20));
  CHECK_THROWS_AS(remainder_sequence(s, builtin_flux("exponential"), 3), FluxMismatch);
}

TEST_CASE("series remainders match the exact ones") {
  const auto quartic = builtin_flux("quartic");
  const auto s = make_shock(quartic, 0.3, 0.1, 1.0);
  const auto R = remainder_sequence(s, quartic, 6);
  for (double u : {0.1, 0.15, 0.2, 0.27, 0.3}) {
    const auto v = remainder_values_series(s, quartic, 6, u);
    for (int k = 0; k < 6; ++k) CHECK(static_cast<double>(v[k]) == doctest::Approx(R[k].eval(u)).epsilon(1e-12));
  }
  const auto expo = builtin_flux("exponential");
  const auto se = make_shock(expo, 0.3, 0.1, 3.0);
  const auto tab = remainder_table(se, expo, 4);
  REQUIRE(tab.size() == 4);
  // R_1 = e^u - lambda, maximal at an endpoint
  CHECK(tab[0].sup_norm == doctest::Approx(std::max(std::exp(0.3) - se.lambda, se.lambda - std::exp(0.1))));
  CHECK_THROWS_AS(remainder_values_series(se, expo, 7, 0.2), OverflowError);
}

TEST_CASE("Q_n identity along the relaxation wave") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto us = solve_first_order(s, burgers, ModelKind::relaxation, {});
  for (int n = 1; n <= 6; ++n) {
    const double r = verify_qn_identity(s, burgers, n, us);
    MESSAGE("n = " << n << " residual " << r);
    CHECK(r < 1e-6);
  }
  const auto sym = make_shock(burgers, 0.1, -0.1, 1.0);
  CHECK(verify_qn_identity(sym, burgers, 3, solve_first_order(sym, burgers, ModelKind::relaxation, {})) < 1e-9);

  for (const char* name : {"quartic", "exponential"}) {
    const auto fl = builtin_flux(name);
    const double a = std::string(name) == "exponential" ? 3.0 : 1.0;
    const auto sh = make_shock(fl, 0.3, 0.1, a);
    const auto p = solve_first_order(sh, fl, ModelKind::relaxation, {});
    for (int n = 1; n <= 3; ++n) CHECK(verify_qn_identity(sh, fl, n, p) < 1e-6);
  }

  // a wrong sign in the chord breaks the identity
  testing::set_chord_sign_fault(true);
  const double broken = verify_qn_identity(s, burgers, 2, us);
  testing::set_chord_sign_fault(false);
  CHECK(broken > 1e-3);
}
