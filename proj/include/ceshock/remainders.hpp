#pragma once

#include <vector>

#include "ceshock/flux_model.hpp"
#include "ceshock/polynomial.hpp"
#include "ceshock/wave_solvers.hpp"

namespace ceshock {

inline constexpr int kMaxExactOrder = 20;
inline constexpr int kMaxSeriesOrder = 6;

struct RemainderReport {
  int n = 0;
  double sup_norm = 0.0;     ///< max of |R_n| on [u_+, u_-]
  double normalized = 0.0;   ///< sup_norm / (delta^n n!)
  double gamma_factor = 0.0; ///< gamma_lambda^n
  double gamma_n_times_norm = 0.0;
};

/// The chord function as an exact polynomial; the speed is the exact
/// Rankine-Hugoniot quotient of the (exactly converted) end states.
ExactPolynomial chord_polynomial(const ShockData& shock, const FluxModel& flux);

/// R_1 = P', R_{k+1} = (P R_k)' for k < n_max, in exact rational arithmetic.
/// FluxMismatch for non-polynomial fluxes; OverflowError if n_max > 20 or the
/// coefficients outgrow the arithmetic budget.
std::vector<ExactPolynomial> remainder_sequence(const ShockData& shock, const FluxModel& flux, int n_max);

/// Sup-norms from the exact values at the endpoints and at every real
/// critical point in [u_+, u_-].
std::vector<RemainderReport> remainder_norms(const ShockData& shock, const std::vector<ExactPolynomial>& polys);

/// R_1(u) ... R_n(u) by nested differentiation of Taylor series in extended
/// precision; for fluxes without exact coefficients. n <= 6.
std::vector<long double> remainder_values_series(const ShockData& shock, const FluxModel& flux, int n, double u);

/// Sup-norms of the series remainders on a 4001-point grid of [u_+, u_-].
std::vector<RemainderReport> remainder_norms_series(const ShockData& shock, const FluxModel& flux, int n_max);

/// Polynomial fluxes use the exact path, others the series path.
std::vector<RemainderReport> remainder_table(const ShockData& shock, const FluxModel& flux, int n_max);

/// Maximum over |x| <= 0.8 max|xs| of
///   |Q_n u_* - P(u_*) (1 - gamma^n R_n(u_*))| / |P(u_*)|,
/// with Q_1 u = (a^2 - lambda f'(u)) u', Q_{k+1} u = Q_1 u + lambda (Q_k u)'.
/// Derivatives of u_* come from Taylor series: for Burgers from the
/// closed-form logistic, otherwise from the profile values propagated
/// through the wave equation. n <= 6.
double verify_qn_identity(const ShockData& shock, const FluxModel& flux, int n, const WaveProfile& profile);

}  // namespace ceshock
