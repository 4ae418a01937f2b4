#include "ceshock/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double inv_l(const ShockData& s, const FluxModel& f, double u) { return s.a * s.a - s.lambda * f.f1(u); }

constexpr int kSignSamples = 1001;

}  // namespace

double saddle_slope(const ShockData& shock, const FluxModel& flux, Endpoint endpoint) {
  const double ue = endpoint == Endpoint::left ? shock.u_minus : shock.u_plus;
  const double dP = chord_dP(shock, flux, ue);
  const double l = 1.0 / inv_l(shock, flux, ue);
  const double disc = 1.0 + 4.0 * shock.lambda * l * dP;
  if (disc < 0.0) {
    throw DiscriminantError("saddle slope discriminant 1 + 4 lambda l P' = " + num(disc) +
                            " is negative; the shock is too strong");
  }
  return 2.0 * dP / (1.0 + std::sqrt(disc));
}

// ---------------------------------------------------------------------------

SecondOrderCurve::Eval SecondOrderCurve::state_at(const Segment& seg, double y, double omega) const {
  const double z = std::exp(y);
  const double u = seg.anchored_plus ? shock_.u_plus + z : shock_.u_minus - z;
  const double ratio =
      seg.anchored_plus ? chord_ratio_plus(shock_, flux_, z) : chord_ratio_minus(shock_, flux_, z);
  return {u, omega * z * ratio / inv_l(shock_, flux_, u), omega};
}

SecondOrderCurve::SecondOrderCurve(const ShockData& shock, const FluxModel& flux, const ShootingSettings& shooting,
                                   const ResolvedSettings& settings)
    : shock_(shock), flux_(flux) {
  if (!(shooting.eta > 0.0 && shooting.eta < 0.25))
    throw ConfigError("shooting offset eta must lie in (0, 1/4) as a fraction of delta");
  if (shock_.lambda == 0.0) {
    degenerate_ = true;
    const double D = shock_.a * shock_.a;
    relaxation_ = std::make_shared<const ScalarWaveCurve>(shock_, flux_, [D](double) { return D; }, settings);
    x_lo_ = relaxation_->x_resolved_lo();
    x_hi_ = relaxation_->x_resolved_hi();
    return;
  }

  // lambda > 0: forward in x from the saddle u_-; lambda < 0: forward in
  // s = -x from the saddle u_+. In both cases s is the stable direction of
  // the omega equation.
  const bool forward = shock_.lambda > 0.0;
  const double sigma = forward ? 1.0 : -1.0;
  const double lambda = shock_.lambda;
  const double mid = shock_.midpoint();
  const double delta = shock_.delta;

  ode::Tolerances<2> tol;
  tol.abs_tol = {settings.rel_tol, settings.abs_tol};
  tol.rel_tol = {0.0, settings.rel_tol};
  const ode::StepControl ctl{};

  auto make_rhs = [this, sigma, lambda](bool anchored_plus) {
    return [this, sigma, lambda, anchored_plus](double, const std::array<double, 2>& st) {
      const double z = std::exp(st[0]);
      const double omega = st[1];
      const double u = anchored_plus ? shock_.u_plus + z : shock_.u_minus - z;
      const double ratio =
          anchored_plus ? chord_ratio_plus(shock_, flux_, z) : chord_ratio_minus(shock_, flux_, z);
      const double l = 1.0 / inv_l(shock_, flux_, u);
      const double dy = sigma * l * omega * ratio * (anchored_plus ? 1.0 : -1.0);
      const double dP = chord_dP(shock_, flux_, u);
      const double domega = sigma * ((1.0 - omega) / lambda - l * omega * omega * dP);
      return std::array<double, 2>{dy, domega};
    };
  };

  std::string escape;
  auto watch = [&](const std::array<double, 2>& st) {
    if (!std::isfinite(st[0]) || !std::isfinite(st[1])) {
      escape = "non-finite state";
      return true;
    }
    if (!(st[1] > 0.0)) {
      escape = "w reached 0 (omega = " + num(st[1]) + ")";
      return true;
    }
    if (std::exp(st[0]) > delta) {
      escape = "u left (u_+, u_-)";
      return true;
    }
    return false;
  };

  // Segment 1: saddle to midpoint.
  first_.anchored_plus = !forward;
  const Endpoint start_end = forward ? Endpoint::left : Endpoint::right;
  const double ue = forward ? shock_.u_minus : shock_.u_plus;
  const double s_slope = saddle_slope(shock_, flux_, start_end);
  const double omega0 = s_slope / chord_dP(shock_, flux_, ue);
  const double y0 = std::log(shooting.eta * delta);
  const double target1 = std::log(forward ? shock_.u_minus - mid : mid - shock_.u_plus);
  auto rhs1 = make_rhs(first_.anchored_plus);
  start_rate_ = rhs1(0.0, {y0, omega0})[0];
  bool crossed = false;
  first_.traj = ode::integrate_dopri5<2>(rhs1, 0.0, {y0, omega0}, 4.0 * settings.x_max + 1.0, tol, ctl,
                                         [&](double, const std::array<double, 2>& st) {
                                           if (watch(st)) return true;
                                           crossed = st[0] >= target1;
                                           return crossed;
                                         });
  if (!escape.empty()) throw TrajectoryEscape("second-order shooting failed near the first saddle: " + escape);
  if (!crossed) throw TrajectoryEscape("second-order trajectory did not reach the midpoint");

  // Locate the midpoint crossing on the dense output of the last step.
  const auto& last = first_.traj.steps().back();
  double lo = last.t0, hi = last.t0 + last.h;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    if (first_.traj(m)[0] < target1) {
      lo = m;
    } else {
      hi = m;
    }
  }
  const double s_cross = hi;
  const double omega_mid = first_.traj(s_cross)[1];
  // x = sigma (s - s_cross)
  first_.sign = sigma;
  first_.offset = s_cross;

  // Segment 2: midpoint to the node.
  second_.anchored_plus = forward;
  second_.sign = sigma;
  second_.offset = 0.0;
  const double log_tail = std::log(settings.tail_tol);
  const double y_mid = std::log(forward ? mid - shock_.u_plus : shock_.u_minus - mid);
  second_.traj = ode::integrate_dopri5<2>(make_rhs(second_.anchored_plus), 0.0, {y_mid, omega_mid},
                                          settings.x_max, tol, ctl,
                                          [&](double, const std::array<double, 2>& st) {
                                            if (watch(st)) return true;
                                            return st[0] < log_tail;
                                          });
  if (!escape.empty()) throw TrajectoryEscape("second-order trajectory escaped before the far end state: " + escape);
  second_.truncated = second_.traj.final_state()[0] < log_tail;

  const double x_start = -sigma * s_cross;
  const double x_end = sigma * second_.traj.t_end();
  x_lo_ = std::min(x_start, x_end);
  x_hi_ = std::max(x_start, x_end);
}

SecondOrderCurve::Eval SecondOrderCurve::eval(double x) const {
  if (degenerate_) {
    return {relaxation_->u(x), relaxation_->slope(x), std::numeric_limits<double>::quiet_NaN()};
  }
  const bool forward = shock_.lambda > 0.0;
  const bool in_first = forward ? x < 0.0 : x > 0.0;
  const Segment& seg = in_first ? first_ : second_;
  const double s = seg.sign * x + seg.offset;
  if (in_first && s < 0.0) {
    // linearized approach to the saddle
    const auto& y0 = first_.traj.initial_state();
    return state_at(seg, y0[0] + start_rate_ * s, y0[1]);
  }
  if (!in_first && seg.truncated && s > seg.traj.t_end()) {
    const double u = seg.anchored_plus ? shock_.u_plus : shock_.u_minus;
    return {u, 0.0, seg.traj.final_state()[1]};
  }
  const auto st = seg.traj(s);
  return state_at(seg, st[0], st[1]);
}

double SecondOrderCurve::u(double x) const { return eval(x).u; }
double SecondOrderCurve::slope(double x) const { return eval(x).slope; }

std::vector<std::pair<double, double>> SecondOrderCurve::phase_samples(std::size_t count) const {
  std::vector<std::pair<double, double>> out;
  if (degenerate_ || count < 2) return out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = x_lo_ + (x_hi_ - x_lo_) * static_cast<double>(i) / static_cast<double>(count - 1);
    const auto e = eval(x);
    out.emplace_back(e.u, e.omega);
  }
  return out;
}

// ---------------------------------------------------------------------------

WaveProfile solve_v2(const ShockData& shock, const FluxModel& flux, const ShootingSettings& shooting,
                     const OdeSettings& ode) {
  const ResolvedSettings rs = resolve(ode, shock);
  const SecondOrderCurve curve(shock, flux, shooting, rs);
  WaveProfile p;
  p.model = {ModelKind::v2, 0.0};
  p.shock = shock;
  p.xs = uniform_grid(rs.x_max, rs.grid_dx);
  p.us.resize(p.xs.size());
  p.slopes.resize(p.xs.size());
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    p.us[i] = curve.u(p.xs[i]);
    p.slopes[i] = curve.slope(p.xs[i]);
  }
  p.normalization_residual = std::abs(curve.u(0.0) - shock.midpoint());
  p.x_resolved_lo = curve.x_resolved_lo();
  p.x_resolved_hi = curve.x_resolved_hi();
  return p;
}

double k_mu(const ShockData& shock, const FluxModel& flux, double mu, double u) {
  const double a2 = shock.a * shock.a;
  const double c = (mu - shock.lambda * shock.lambda) / (a2 - mu);
  const double d = shock.lambda / (a2 - mu);
  const double P = chord_P(shock, flux, u);
  const double dP = chord_dP(shock, flux, u);
  const double dPP = dP * dP + P * flux.f2(u);  // (P P')'
  return c * (1.0 + d * dP) - d * d * dPP;
}

nlohmann::ordered_json SandwichReport::to_json() const {
  nlohmann::ordered_json j;
  j["C_found"] = C_found;
  j["max_K_plus_violation"] = max_K_plus_violation;
  j["max_K_minus_violation"] = max_K_minus_violation;
  j["ordering_ok"] = ordering_ok;
  return j;
}

namespace {

struct SignScan {
  double min_plus, max_minus;
  bool ok() const { return min_plus > 0.0 && max_minus < 0.0; }
};

SignScan scan_signs(const ShockData& shock, const FluxModel& flux, double C) {
  const double l2 = shock.lambda * shock.lambda, d2 = shock.delta * shock.delta;
  const double mu_p = l2 * (1.0 + C * d2), mu_m = l2 * (1.0 - C * d2);
  SignScan r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  if (!(mu_p < shock.a * shock.a)) return {-1.0, 1.0};
  for (int i = 0; i < kSignSamples; ++i) {
    const double u = shock.u_plus + shock.delta * i / (kSignSamples - 1);
    r.min_plus = std::min(r.min_plus, k_mu(shock, flux, mu_p, u));
    r.max_minus = std::max(r.max_minus, k_mu(shock, flux, mu_m, u));
  }
  return r;
}

}  // namespace

SandwichReport check_sandwich_v2(const ShockData& shock, const FluxModel& flux, const WaveProfile& v2,
                                 const OdeSettings& ode) {
  if (!v2.shock.same_as(shock)) throw ShockMismatch("V2 profile belongs to a different shock");
  SandwichReport rep;
  const double tol = 1e-10 * shock.delta;
  if (shock.lambda == 0.0) {
    // mu_+ = mu_- = 0: both comparison profiles are u_* itself
    const auto u_star = solve_phi_mu(shock, flux, 0.0, ode);
    rep.C_found = 0.0;
    rep.ordering = check_ordering(u_star, v2, u_star, tol);
    rep.ordering_ok = rep.ordering.ok;
    return rep;
  }

  constexpr double c_lo = 0.1, c_hi = 100.0;
  if (!scan_signs(shock, flux, c_hi).ok()) {
    throw SignError("no comparison constant C in [0.1, 100] gives K_+ > 0 > K_-");
  }
  double C = c_lo;
  if (!scan_signs(shock, flux, c_lo).ok()) {
    double lo = c_lo, hi = c_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double m = 0.5 * (lo + hi);
      if (scan_signs(shock, flux, m).ok()) {
        hi = m;
      } else {
        lo = m;
      }
    }
    C = hi;
  }
  const auto scan = scan_signs(shock, flux, C);
  rep.C_found = C;
  rep.max_K_plus_violation = std::max(0.0, -scan.min_plus);
  rep.max_K_minus_violation = std::max(0.0, scan.max_minus);

  const double l2 = shock.lambda * shock.lambda, d2 = shock.delta * shock.delta;
  const auto phi_p = solve_phi_mu(shock, flux, l2 * (1.0 + C * d2), ode);
  const auto phi_m = solve_phi_mu(shock, flux, l2 * (1.0 - C * d2), ode);
  rep.ordering = check_ordering(phi_p, v2, phi_m, tol);
  rep.ordering_ok = rep.ordering.ok;
  return rep;
}

double reversal_discrepancy(const ShockData& shock, const FluxModel& flux, const WaveProfile& v2,
                            const ShootingSettings& shooting, const OdeSettings& ode) {
  const FluxModel g = flux.reflected();
  const ShockData mirrored = make_shock(g, -shock.u_plus, -shock.u_minus, shock.a);
  const SecondOrderCurve curve(mirrored, g, shooting, resolve(ode, mirrored));
  double worst = 0.0;
  for (std::size_t i = 0; i < v2.xs.size(); ++i)
    worst = std::max(worst, std::abs(v2.us[i] + curve.u(-v2.xs[i])));
  return worst;
}

PhasePlaneReport check_phase_plane(const ShockData& shock, const FluxModel& flux, double C,
                                   const ShootingSettings& shooting, const OdeSettings& ode) {
  PhasePlaneReport rep;
  const ResolvedSettings rs = resolve(ode, shock);
  const SecondOrderCurve curve(shock, flux, shooting, rs);
  const double a2 = shock.a * shock.a, l2 = shock.lambda * shock.lambda, d2 = shock.delta * shock.delta;
  const double mu_p = l2 * (1.0 + C * d2), mu_m = l2 * (1.0 - C * d2);
  rep.min_margin = std::numeric_limits<double>::infinity();
  // restrict to the part of the trajectory away from the end states, where
  // omega is resolved to better than the gap between the reference curves
  const double floor = 1e-6 * shock.delta;
  for (const auto& [u, omega] : curve.phase_samples(shooting.u_steps)) {
    if (!(u - shock.u_plus > floor && shock.u_minus - u > floor)) continue;
    const double num_l = inv_l(shock, flux, u);
    const double w_p = num_l / (a2 - mu_p), w_m = num_l / (a2 - mu_m);
    const double lo = std::min(w_p, w_m), hi = std::max(w_p, w_m);
    const double margin = std::min(omega - lo, hi - omega) / (hi - lo);
    ++rep.checked;
    rep.min_margin = std::min(rep.min_margin, margin);
    if (!(margin > 0.0)) rep.ok = false;
  }
  if (rep.checked == 0) rep.ok = false;
  return rep;
}

double v2_residual(const ShockData& shock, const FluxModel& flux, double dx, const ShootingSettings& shooting,
                   const OdeSettings& ode) {
  const ResolvedSettings rs = resolve(ode, shock);
  const SecondOrderCurve curve(shock, flux, shooting, rs);
  const auto xs = uniform_grid(rs.x_max, dx);
  std::vector<double> u(xs.size()), w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) u[i] = curve.u(xs[i]);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i)
    w[i] = inv_l(shock, flux, u[i]) * (u[i + 1] - u[i - 1]) / (2.0 * dx);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < xs.size(); ++i) {
    const double q2 = w[i] + shock.lambda * (w[i + 1] - w[i - 1]) / (2.0 * dx);
    worst = std::max(worst, std::abs(q2 - chord_P(shock, flux, u[i])));
  }
  return worst;
}

}  // namespace ceshock
