#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ceshock/wave_solvers.hpp"

namespace ceshock {

enum class Endpoint { left, right };

struct PhasePoint {
  double u;
  double w;  ///< (a^2 - lambda f'(u)) u'
};

struct ShootingSettings {
  double eta = 1e-6;            ///< saddle offset as a fraction of delta
  std::size_t u_steps = 1000;   ///< sample count of the phase-plane check
  double comparison_C = 1.0;    ///< C in mu_+- = lambda^2 (1 +- C delta^2)
};

/// Slope s of the trajectory w ~ s (u - u_e) at an end state: the root of
/// lambda l s^2 + s - P'(u_e) = 0 continuous in lambda, l = 1/(a^2 - lambda f').
double saddle_slope(const ShockData& shock, const FluxModel& flux, Endpoint endpoint);

/// Continuous second-order wave V_2 solving w + lambda w' = P(u),
/// w = (a^2 - lambda f'(u)) u', normalized by V_2(0) = midpoint.
///
/// Integrated in x with state (log-distance to the current end state,
/// omega = w / P). The trajectory starts eta delta away from the saddle
/// (u_- for lambda > 0, u_+ in reversed x for lambda < 0) on the unstable
/// eigen-direction and is followed into the node at the other end. Beyond
/// the start point the linearized exponential tail is used.
class SecondOrderCurve {
 public:
  SecondOrderCurve(const ShockData& shock, const FluxModel& flux, const ShootingSettings& shooting,
                   const ResolvedSettings& settings);

  double u(double x) const;
  double slope(double x) const;
  /// omega = w / P along the computed trajectory; nodes for the phase check.
  std::vector<std::pair<double, double>> phase_samples(std::size_t count) const;
  double x_resolved_lo() const { return x_lo_; }
  double x_resolved_hi() const { return x_hi_; }

 private:
  struct Segment {
    ode::DenseTrajectory<2> traj;  // (log z, omega) against s
    bool anchored_plus = true;     // z = u - u_+ (else z = u_- - u)
    double sign = 1.0;             // s = sign * x + offset
    double offset = 0.0;
    bool truncated = false;        // ended below the tail tolerance
  };
  struct Eval {
    double u, slope, omega;
  };
  Eval eval(double x) const;
  Eval state_at(const Segment& seg, double y, double omega) const;

  ShockData shock_;
  FluxModel flux_;
  bool degenerate_ = false;  // lambda == 0
  double start_rate_ = 0.0;  // d log z / ds on the start eigen-direction
  double x_lo_ = 0.0, x_hi_ = 0.0;
  Segment first_, second_;
  std::shared_ptr<const ScalarWaveCurve> relaxation_;
};

/// V_2 sampled on the uniform grid; lambda = 0 returns u_* exactly.
/// TrajectoryEscape if omega leaves (0, inf) or u leaves (u_+, u_-).
WaveProfile solve_v2(const ShockData& shock, const FluxModel& flux, const ShootingSettings& shooting,
                     const OdeSettings& ode);

/// K_mu(u) with Q_2 phi_mu = P(phi_mu) (1 + K_mu(phi_mu)).
double k_mu(const ShockData& shock, const FluxModel& flux, double mu, double u);

struct SandwichReport {
  double C_found = 0.0;
  double max_K_plus_violation = 0.0;   ///< max(0, -min K_+)
  double max_K_minus_violation = 0.0;  ///< max(0, max K_-)
  bool ordering_ok = false;
  OrderingReport ordering;
  nlohmann::ordered_json to_json() const;
};

/// Finds the threshold C in [0.1, 100] above which K_+ > 0 > K_- holds on
/// a 1001-point grid of [u_+, u_-] (bisection), then checks the ordering
/// sign(x) phi_{mu+} < sign(x) V_2 < sign(x) phi_{mu-} pointwise.
/// SignError if even C = 100 fails.
SandwichReport check_sandwich_v2(const ShockData& shock, const FluxModel& flux, const WaveProfile& v2,
                                 const OdeSettings& ode);

/// Case 2 applied to the mirrored problem v(x) = -u(-x) with flux f(-v);
/// returns the sup distance to V_2 on the profile grid.
double reversal_discrepancy(const ShockData& shock, const FluxModel& flux, const WaveProfile& v2,
                            const ShootingSettings& shooting, const OdeSettings& ode);

struct PhasePlaneReport {
  bool ok = true;
  std::size_t checked = 0;
  double min_margin = 0.0;  ///< smallest distance of omega to the nearer bound, relative
};
/// Checks that omega = w / P stays strictly between the reference curves
/// (a^2 - lambda f'(u)) / (a^2 - mu_+-) of phi_{mu+-}.
PhasePlaneReport check_phase_plane(const ShockData& shock, const FluxModel& flux, double C,
                                   const ShootingSettings& shooting, const OdeSettings& ode);

/// Sup-norm of Q_2 u - P(u) for V_2 sampled on the grid k dx (|x| <= x_max),
/// derivatives by centered differences.
double v2_residual(const ShockData& shock, const FluxModel& flux, double dx, const ShootingSettings& shooting,
                   const OdeSettings& ode);

}  // namespace ceshock
