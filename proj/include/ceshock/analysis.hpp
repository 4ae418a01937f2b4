#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ceshock/second_order.hpp"
#include "ceshock/wave_solvers.hpp"

namespace ceshock {

struct ErrorProfile {
  std::vector<double> xs;
  std::vector<double> diffs;
  std::pair<std::string, std::string> model_pair;
  ShockData shock;
};

/// Pointwise |a - b| on the grid of a; b is interpolated when its grid
/// differs. ShockMismatch when the shocks differ.
ErrorProfile error_profile(const WaveProfile& a, const WaveProfile& b);

double uniform_norm(const ErrorProfile& e);

/// sup over |x| >= x_min of diff(x) / (|x| exp(-c delta |x|)).
double weighted_norm(const ErrorProfile& e, double c, double x_min);

/// The excluded region |x| < x_min: diff(x) <= s |x| + 1e-9 delta, with s the
/// largest diff(x)/|x| over x_min <= |x| <= 2 x_min.
bool near_origin_bound(const ErrorProfile& e, double x_min);

/// 1 / (2 (2a^2 - h)); with the default h = a^2/2 this is 1 / (3a^2).
double default_weight_rate(double a, std::optional<double> h = std::nullopt);

/// Any profile model on one shock.
WaveProfile solve_model(const ShockData& shock, const FluxModel& flux, const ModelSpec& model, const OdeSettings& ode,
                        const ShootingSettings& shooting = {});

enum class NormKind { uniform, weighted };
std::string to_string(NormKind k);
NormKind parse_norm_kind(const std::string& s);

struct ScalingOptions {
  std::optional<double> c;      ///< weight rate, default_weight_rate(a)
  std::optional<double> x_min;  ///< default: the grid spacing of each shock
  OdeSettings ode;
  ShootingSettings shooting;
  bool parallel = true;
};

struct ScalingReport {
  std::vector<double> deltas;
  std::vector<double> norms;               ///< NaN where the entry failed
  std::vector<std::string> failures;       ///< empty string on success
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;               ///< RMS of the log residuals
  NormKind norm_kind = NormKind::uniform;
  std::pair<std::string, std::string> model_pair;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

/// Least-squares slope of log(norm) against log(delta) over the successful
/// entries; returns {slope, RMS residual}.
std::pair<double, double> fit_loglog(const std::vector<double>& deltas, const std::vector<double>& norms);

/// Norm of (model A - model B) for shocks center +- delta/2, one per delta,
/// then the log-log fit. At least 4 strictly decreasing deltas (ConfigError);
/// individual failures are recorded, at least 4 must succeed (SolverError).
ScalingReport scaling_fit(const FluxModel& flux, double a, double center, const std::vector<double>& deltas,
                          const std::pair<ModelSpec, ModelSpec>& models, NormKind kind,
                          const ScalingOptions& opts = {});

/// Fit-then-verify test of |phi_mu1 - phi_mu2| <= C delta^2 |x| |mu1 - mu2| exp(-c delta |x|).
/// c is half the slowest analytic tail rate divided by delta; C is the
/// largest ratio on the default grid; the bound is re-checked on a grid
/// with half the spacing against margin * C.
struct PhiMuBoundFit {
  double C = 0.0;
  double c = 0.0;
  double C_fine = 0.0;  ///< largest ratio on the finer grid
  bool ok = false;
};
PhiMuBoundFit fit_phi_mu_bound(const ShockData& shock, const FluxModel& flux, double mu1, double mu2,
                          const OdeSettings& ode = {}, double margin = 1.05);

}  // namespace ceshock
