#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "ceshock/errors.hpp"

namespace ceshock::ode {

/// Tolerances per component: scale_i = abs_tol[i] + rel_tol[i] * |y_i|.
template <std::size_t N>
struct Tolerances {
  std::array<double, N> abs_tol{};
  std::array<double, N> rel_tol{};
};

struct StepControl {
  double h_init = 0.0;  ///< 0 selects an automatic initial step
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;
};

/// Piecewise quartic continuous extension of a Dormand-Prince run, kept for
/// every accepted step so the solution can be evaluated anywhere afterwards.
template <std::size_t N>
class DenseTrajectory {
 public:
  using State = std::array<double, N>;

  struct Step {
    double t0;
    double h;
    std::array<State, 5> r;
  };

  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  const State& initial_state() const { return y_begin_; }
  const State& final_state() const { return y_end_; }
  std::size_t step_count() const { return steps_.size(); }
  const std::vector<Step>& steps() const { return steps_; }

  /// Evaluates the interpolant; t is clamped to [t_begin, t_end].
  State operator()(double t) const {
    if (steps_.empty() || t <= t_begin_) return y_begin_;
    if (t >= t_end_) return y_end_;
    auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                               [](double v, const Step& s) { return v < s.t0; });
    const Step& s = *(it - 1);
    const double th = (t - s.t0) / s.h;
    const double th1 = 1.0 - th;
    State y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = s.r[0][i] + th * (s.r[1][i] + th1 * (s.r[2][i] + th * (s.r[3][i] + th1 * s.r[4][i])));
    return y;
  }

  void reset(double t0, const State& y0) {
    steps_.clear();
    t_begin_ = t_end_ = t0;
    y_begin_ = y_end_ = y0;
  }
  void push(const Step& s, double t1, const State& y1) {
    steps_.push_back(s);
    t_end_ = t1;
    y_end_ = y1;
  }

 private:
  std::vector<Step> steps_;
  double t_begin_ = 0.0, t_end_ = 0.0;
  State y_begin_{}, y_end_{};
};

/// Integrates y' = rhs(t, y) from t0 towards t_end (t_end > t0) with the
/// Dormand-Prince 5(4) pair and its dense output. After every accepted step
/// `stop(t, y)` is consulted; returning true ends the integration there.
/// Throws IntegrationError on step-size underflow or non-finite states.
template <std::size_t N, class Rhs, class Stop>
DenseTrajectory<N> integrate_dopri5(Rhs&& rhs, double t0, std::array<double, N> y0, double t_end,
                                    const Tolerances<N>& tol, const StepControl& ctl, Stop&& stop) {
  using State = std::array<double, N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                   a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  DenseTrajectory<N> traj;
  traj.reset(t0, y0);
  if (!(t_end > t0)) return traj;

  auto check_finite = [](const State& y) {
    for (double v : y)
      if (!std::isfinite(v)) throw IntegrationError("non-finite state in Dormand-Prince integration");
  };
  check_finite(y0);

  auto scale = [&](std::size_t i, double a, double b) {
    return tol.abs_tol[i] + tol.rel_tol[i] * std::max(std::abs(a), std::abs(b));
  };

  State y = y0;
  State k1 = rhs(t0, y);
  check_finite(k1);
  double t = t0;

  double h = ctl.h_init;
  if (!(h > 0.0)) {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = scale(i, y[i], y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  }
  h = std::min({h, ctl.h_max, t_end - t0});

  State k2, k3, k4, k5, k6, k7, yt, ynew;
  double err_prev = 1e-4;
  bool rejected_last = false;
  for (std::size_t n = 0; n < ctl.max_steps; ++n) {
    if (t + h > t_end) h = t_end - t;
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, yt);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, yt);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, yt);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(t + h, ynew);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double r = e / scale(i, y[i], ynew[i]);
      err += r * r;
      finite = finite && std::isfinite(ynew[i]) && std::isfinite(k7[i]);
    }
    err = finite ? std::sqrt(err / N) : std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      // PI step-size control (Hairer, Norsett & Wanner II.4).
      double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      if (err == 0.0) fac = 10.0;
      fac = std::clamp(fac, 0.2, 10.0);
      if (rejected_last) fac = std::min(fac, 1.0);
      err_prev = std::max(err, 1e-4);

      typename DenseTrajectory<N>::Step s;
      s.t0 = t;
      s.h = h;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = ynew[i] - y[i];
        const double bspl = h * k1[i] - dy;
        s.r[0][i] = y[i];
        s.r[1][i] = dy;
        s.r[2][i] = bspl;
        s.r[3][i] = dy - h * k7[i] - bspl;
        s.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t += h;
      y = ynew;
      k1 = k7;
      traj.push(s, t, y);
      rejected_last = false;
      if (t >= t_end || stop(t, y)) return traj;
      h = std::min(h * fac, ctl.h_max);
    } else {
      const double fac = finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.1;
      h *= fac;
      rejected_last = true;
    }
    if (!(h > 1e-14 * std::max(1.0, std::abs(t))))
      throw IntegrationError("step size underflow in Dormand-Prince integration");
  }
  throw IntegrationError("maximum number of integration steps exceeded");
}

}  // namespace ceshock::ode
