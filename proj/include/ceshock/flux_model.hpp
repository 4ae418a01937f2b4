#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ceshock/jet.hpp"
#include "ceshock/polynomial.hpp"

namespace ceshock {

using ExtJet = Jet<long double>;

/// A strictly convex flux f on a working interval [-M, M].
///
/// Besides f, f' and f'' the model carries a stable secant
/// (f(u+z) - f(u))/z, which the profile solvers use to evaluate the chord
/// function near its roots without cancellation, and Taylor-series
/// evaluators used for exact derivatives along profiles. Polynomial fluxes
/// also keep their exact rational coefficients.
class FluxModel {
 public:
  using ScalarFn = std::function<double(double)>;
  using SecantFn = std::function<double(double, double)>;
  using JetFn = std::function<ExtJet(const ExtJet&)>;

  struct Functions {
    ScalarFn f, f1, f2;
    SecantFn secant;  // optional; falls back to a plain difference quotient
    JetFn jet_f, jet_f1;  // optional
  };

  /// Builds a flux and certifies strict convexity by sampling f'' at 1001
  /// points of [-M, M]. Throws ConvexityError when inf f'' <= 0.
  FluxModel(std::string name, Functions fns, double M);

  /// Polynomial flux from exact coefficients, lowest degree first.
  static FluxModel polynomial(std::string name, std::vector<Rational> coeffs, double M);
  /// Polynomial flux from double coefficients (converted exactly).
  static FluxModel polynomial(std::string name, const std::vector<double>& coeffs, double M);

  const std::string& name() const { return name_; }
  double M() const { return M_; }
  double convexity_bound() const { return convexity_bound_; }

  double f(double u) const { return fns_.f(u); }
  double f1(double u) const { return fns_.f1(u); }
  double f2(double u) const { return fns_.f2(u); }
  /// (f(u+z) - f(u))/z, equal to f'(u) at z = 0.
  double secant(double u, double z) const;

  bool has_jets() const { return static_cast<bool>(fns_.jet_f) && static_cast<bool>(fns_.jet_f1); }
  ExtJet jet_f(const ExtJet& u) const;
  ExtJet jet_f1(const ExtJet& u) const;

  bool is_polynomial() const { return exact_coeffs_.has_value(); }
  const std::optional<std::vector<Rational>>& exact_coeffs() const { return exact_coeffs_; }

  /// The mirrored flux g(v) = f(-v), again strictly convex.
  FluxModel reflected() const;

  /// Sampled inf of f'' on [lo, hi] (1001 points).
  double min_f2(double lo, double hi) const;
  double max_f2(double lo, double hi) const;

 private:
  FluxModel() = default;
  std::string name_;
  Functions fns_;
  double M_ = 0.0;
  double convexity_bound_ = 0.0;
  std::optional<std::vector<Rational>> exact_coeffs_;
};

/// burgers (u^2/2), exponential (e^u), quartic (u^2/2 + u^4/12), all with M = 2.
std::vector<FluxModel> builtin_fluxes();
/// Looks up a builtin by name; throws ConfigError for unknown names.
FluxModel builtin_flux(const std::string& name);

/// Endpoint states of an admissible shock with its Rankine-Hugoniot speed.
struct ShockData {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double a = 1.0;       ///< relaxation speed
  double lambda = 0.0;  ///< shock speed
  double delta = 0.0;   ///< strength u_minus - u_plus

  double midpoint() const { return 0.5 * (u_minus + u_plus); }
  /// gamma_lambda = lambda / (a^2 - lambda^2)
  double gamma() const { return lambda / (a * a - lambda * lambda); }
  bool same_as(const ShockData& o) const;
};

/// Validates admissibility (u_minus > u_plus), the working interval, and the
/// sub-characteristic condition sup |f'| < a on [u_plus - delta, u_minus + delta].
ShockData make_shock(const FluxModel& flux, double u_minus, double u_plus, double a);
/// Shock with states center +/- delta/2.
ShockData make_centered_shock(const FluxModel& flux, double center, double delta, double a);

/// Chord function P(u) = f(u) - f(u_-) - lambda (u - u_-). Evaluated in the
/// form anchored at the nearer endpoint so that it is relatively accurate
/// close to both roots.
double chord_P(const ShockData& shock, const FluxModel& flux, double u);
/// P'(u) = f'(u) - lambda.
double chord_dP(const ShockData& shock, const FluxModel& flux, double u);
/// P(u_+ + z) / z for z > 0.
double chord_ratio_plus(const ShockData& shock, const FluxModel& flux, double z);
/// P(u_- - z) / z for z > 0.
double chord_ratio_minus(const ShockData& shock, const FluxModel& flux, double z);

namespace testing {
/// Mutation hook used by `verify --inject-fault`: flips the sign of every
/// chord evaluation process-wide.
void set_chord_sign_fault(bool enabled);
bool chord_sign_fault();
}  // namespace testing

}  // namespace ceshock
