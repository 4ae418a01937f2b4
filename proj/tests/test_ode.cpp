#include "doctest.h"

#include <cmath>

#include "ceshock/ode.hpp"

using namespace ceshock;

TEST_CASE("exponential decay with dense output") {
  ode::Tolerances<1> tol;
  tol.abs_tol[0] = 1e-12;
  tol.rel_tol[0] = 1e-10;
  auto traj = ode::integrate_dopri5<1>([](double, const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; },
                                       0.0, {1.0}, 10.0, tol, {}, [](double, const auto&) { return false; });
  CHECK(traj.t_end() == 10.0);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    worst = std::max(worst, std::abs(traj(t)[0] - std::exp(-t)));
  }
  CHECK(worst < 1e-9);
  CHECK(traj(-1.0)[0] == 1.0);
  CHECK(traj(20.0)[0] == traj.final_state()[0]);
}

TEST_CASE("harmonic oscillator and stop callback") {
  ode::Tolerances<2> tol;
  tol.abs_tol = {1e-12, 1e-12};
  tol.rel_tol = {1e-11, 1e-11};
  auto rhs = [](double, const std::array<double, 2>& y) { return std::array<double, 2>{y[1], -y[0]}; };
  auto traj = ode::integrate_dopri5<2>(rhs, 0.0, {0.0, 1.0}, 2 * M_PI, tol, {},
                                       [](double, const auto&) { return false; });
  CHECK(std::abs(traj.final_state()[0]) < 1e-9);
  CHECK(std::abs(traj(M_PI / 2)[0] - 1.0) < 1e-9);

  auto stopped = ode::integrate_dopri5<2>(rhs, 0.0, {0.0, 1.0}, 10.0, tol, {},
                                          [](double, const std::array<double, 2>& y) { return y[1] < 0.0; });
  CHECK(stopped.t_end() > M_PI / 2);
  CHECK(stopped.t_end() < M_PI);
}

TEST_CASE("non-finite right-hand side raises") {
  ode::Tolerances<1> tol;
  tol.abs_tol[0] = 1e-12;
  tol.rel_tol[0] = 1e-10;
  // y' = y^2 blows up at t = 1
  auto rhs = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{y[0] * y[0]}; };
  CHECK_THROWS_AS(ode::integrate_dopri5<1>(rhs, 0.0, {1.0}, 2.0, tol, {}, [](double, const auto&) { return false; }),
                  IntegrationError);
}
