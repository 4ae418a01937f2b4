#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ceshock/flux_model.hpp"
#include "ceshock/ode.hpp"

namespace ceshock {

enum class ModelKind { relaxation, phi_mu, v1, w1, v2 };

/// A profile model: the kind plus the comparison parameter for phi_mu.
struct ModelSpec {
  ModelKind kind = ModelKind::relaxation;
  double mu = 0.0;

  /// "relaxation", "v1", "w1", "v2" or "phi_mu(<mu>)".
  std::string tag() const;
  /// Accepts the tags above and "phi_mu:<mu>".
  static ModelSpec parse(const std::string& text);
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct OdeSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::optional<double> x_max;     ///< default max(50, 40 a^2 / delta)
  std::optional<double> tail_tol;  ///< default 1e-13 delta + 1e-15
  std::optional<double> grid_dx;   ///< default min(0.05, 0.005 / delta)
  std::optional<double> margin_h;  ///< phi_mu margin, default a^2 / 2
};

/// OdeSettings with every default filled in for a particular shock.
struct ResolvedSettings {
  double rel_tol, abs_tol, x_max, tail_tol, grid_dx, margin_h;
};

ResolvedSettings resolve(const OdeSettings& s, const ShockData& shock);

/// Symmetric uniform grid (k dx, |k| <= ceil(x_max / dx)); x = 0 is a node.
std::vector<double> uniform_grid(double x_max, double dx);

/// A sampled, monotone traveling-wave profile in the rescaled variable.
struct WaveProfile {
  ModelSpec model;
  std::vector<double> xs;
  std::vector<double> us;
  std::vector<double> slopes;  ///< u'(x) from the defining ODE; empty if unknown
  ShockData shock;
  double normalization_residual = 0.0;  ///< |u(0) - (u_- + u_+)/2|
  /// Range of x where values come from the integrated solution rather than
  /// the constant tail extension.
  double x_resolved_lo = 0.0;
  double x_resolved_hi = 0.0;

  std::string model_tag() const { return model.tag(); }
  std::size_t size() const { return xs.size(); }
};

/// Evaluates a sampled profile at arbitrary x: cubic Hermite if slopes are
/// known, monotone piecewise cubic (PCHIP) otherwise; clamped to the end
/// values outside the grid.
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const WaveProfile& p);
  ~ProfileInterpolant();
  ProfileInterpolant(ProfileInterpolant&&) noexcept;
  double operator()(double x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ProfileCheck {
  bool decreasing = true;
  bool bounded = true;
  bool normalized = true;
  bool tails = true;
  std::string message;
  bool ok() const { return decreasing && bounded && normalized && tails; }
};

/// Checks the profile invariants: strictly decreasing and strictly inside
/// (u_+, u_-) wherever the distance to both end states exceeds 1e-10 delta
/// (non-increasing and within [u_+, u_-] elsewhere), normalization residual
/// <= 1e-9 delta, and distance of the first and last samples to the end
/// states <= tail_tol.
ProfileCheck check_profile(const WaveProfile& p, double tail_tol);

/// Diffusion coefficient D(u) of the first-order equation D(u) u' = P(u).
double diffusion_coefficient(const ShockData& shock, const FluxModel& flux, const ModelSpec& model, double u);

/// Continuous solution of D(u) u' = P(u), u(0) = midpoint, obtained by
/// integrating outward from x = 0 in the log-distance to the end state that
/// is being approached. Beyond the point where the distance drops below
/// tail_tol the curve is the constant end state.
class ScalarWaveCurve {
 public:
  using Diffusion = std::function<double(double)>;

  ScalarWaveCurve(const ShockData& shock, const FluxModel& flux, Diffusion diffusion,
                  const ResolvedSettings& settings);

  double u(double x) const;
  double slope(double x) const;
  /// Extent of the integrated (non-extended) solution.
  double x_resolved_lo() const { return -minus_side_.t_end(); }
  double x_resolved_hi() const { return plus_side_.t_end(); }
  std::size_t step_count() const { return plus_side_.step_count() + minus_side_.step_count(); }

 private:
  ShockData shock_;
  FluxModel flux_;
  Diffusion diffusion_;
  double log_tail_;
  ode::DenseTrajectory<1> plus_side_;   // y = log(u - u_+) against x >= 0
  ode::DenseTrajectory<1> minus_side_;  // y = log(u_- - u) against -x >= 0
  bool plus_truncated_ = false;
  bool minus_truncated_ = false;
};

/// Closed-form relaxation profile for Burgers' flux. Throws FluxMismatch for
/// any other flux.
double burgers_closed_form(const ShockData& shock, const FluxModel& flux, double x);
/// Closed-form comparison profile phi_mu for Burgers' flux.
double burgers_phi_mu_closed_form(const ShockData& shock, const FluxModel& flux, double mu, double x);
bool is_burgers(const FluxModel& flux);

/// Comparison profile (a^2 - mu) phi' = P(phi). Requires mu < a^2 - h.
WaveProfile solve_phi_mu(const ShockData& shock, const FluxModel& flux, double mu, const OdeSettings& settings);

/// Relaxation wave u_*, or the first-order profiles V1 / W1.
WaveProfile solve_first_order(const ShockData& shock, const FluxModel& flux, ModelKind kind,
                              const OdeSettings& settings);

/// Samples a curve onto the uniform grid of the resolved settings.
WaveProfile sample_curve(const ScalarWaveCurve& curve, const ModelSpec& model, const ShockData& shock,
                         const ResolvedSettings& settings);

/// Solves F_k(u) - F_k(midpoint) = x with F_k' = D_k / P, using adaptive
/// Gauss-Kronrod quadrature for F_k and bisection on u. The bracket is
/// (u_+ + pad, u_- - pad) with pad = tail_tol; BracketError if x falls
/// outside it.
double invert_implicit(const ShockData& shock, const FluxModel& flux, ModelKind kind, double x,
                       std::optional<double> tail_tol = std::nullopt);

/// Shifted comparison constants used by the ordering sandwiches.
struct SandwichConstants {
  double lower;  ///< Gamma_- or Lambda_-
  double upper;  ///< Gamma_+ or Lambda_+
};
/// Gamma_+- = max/min of f'(u)^2 on [u_+, u_-] -+ b delta (W1 sandwich).
SandwichConstants gamma_constants(const ShockData& shock, const FluxModel& flux, double b);
/// Lambda_+- = max/min of lambda f'(u) on [u_+, u_-] -+ b delta (V1 sandwich).
SandwichConstants lambda_constants(const ShockData& shock, const FluxModel& flux, double b);

/// Pointwise check of sign(x) lower(x) < sign(x) mid(x) < sign(x) upper(x),
/// where lower is the steeper comparison profile. Points at which the two
/// bounds are closer than `tol` cannot resolve a strict ordering and only
/// have to satisfy it up to `tol`.
struct OrderingReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t strict = 0;  ///< points where the sandwich is resolved
  std::size_t violations = 0;
  double worst = 0.0;  ///< largest signed violation (<= 0 means none)
};
OrderingReport check_ordering(const WaveProfile& steep, const WaveProfile& mid, const WaveProfile& shallow,
                              double tol);

}  // namespace ceshock
