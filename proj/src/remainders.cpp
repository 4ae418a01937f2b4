#include "ceshock/remainders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ceshock/errors.hpp"

namespace ceshock {

namespace {

constexpr std::size_t kMaxCoefficientBits = std::size_t{1} << 20;
constexpr int kSeriesSamples = 4001;

using LD = long double;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

RemainderReport make_report(const ShockData& shock, int n, double sup) {
  RemainderReport r;
  r.n = n;
  r.sup_norm = sup;
  r.normalized = sup / (std::pow(shock.delta, n) * factorial(n));
  r.gamma_factor = std::pow(shock.gamma(), n);
  r.gamma_n_times_norm = r.gamma_factor * sup;
  return r;
}

ExtJet chord_jet(const ShockData& shock, const FluxModel& flux, const ExtJet& u) {
  const LD fm = static_cast<LD>(flux.f(shock.u_minus));
  const LD lam = static_cast<LD>(shock.lambda);
  const LD sgn = testing::chord_sign_fault() ? -1.0L : 1.0L;
  return (flux.jet_f(u) - fm - lam * (u - static_cast<LD>(shock.u_minus))) * sgn;
}

// Taylor series of the logistic sigma(x + t), sigma' = k sigma (1 - sigma).
std::vector<LD> logistic_series(LD kappa, LD x, std::size_t length) {
  std::vector<LD> c(length, 0.0L);
  c[0] = 1.0L / (1.0L + std::exp(-kappa * x));
  for (std::size_t k = 0; k + 1 < length; ++k) {
    LD sq = 0.0L;
    for (std::size_t i = 0; i <= k; ++i) sq += c[i] * c[k - i];
    c[k + 1] = kappa * (c[k] - sq) / static_cast<LD>(k + 1);
  }
  return c;
}

// Taylor series of the wave through u0 from u' = P(u) / D by Picard sweeps;
// each sweep fixes one more coefficient.
ExtJet wave_series(const ShockData& shock, const FluxModel& flux, LD u0, std::size_t length) {
  const LD D = static_cast<LD>(shock.a * shock.a - shock.lambda * shock.lambda);
  ExtJet u = ExtJet::constant(u0, length);
  for (std::size_t sweep = 1; sweep < length; ++sweep) {
    const ExtJet rhs = chord_jet(shock, flux, u);
    std::vector<LD> c(length, 0.0L);
    c[0] = u0;
    for (std::size_t k = 0; k + 1 < length; ++k) c[k + 1] = rhs[k] / (D * static_cast<LD>(k + 1));
    u = ExtJet(std::move(c));
  }
  return u;
}

}  // namespace

ExactPolynomial chord_polynomial(const ShockData& shock, const FluxModel& flux) {
  if (!flux.is_polynomial())
    throw FluxMismatch("exact remainders need a polynomial flux, got '" + flux.name() + "'");
  const ExactPolynomial f(*flux.exact_coeffs());
  const Rational um = to_rational(shock.u_minus), up = to_rational(shock.u_plus);
  const Rational lam = (f(um) - f(up)) / (um - up);
  // P(u) = f(u) - f(u_-) - lam (u - u_-)
  ExactPolynomial p = f - ExactPolynomial::constant(f(um)) - lam * ExactPolynomial::linear(um);
  if (testing::chord_sign_fault()) p = Rational(-1) * p;
  return p;
}

std::vector<ExactPolynomial> remainder_sequence(const ShockData& shock, const FluxModel& flux, int n_max) {
  if (n_max < 1) throw ConfigError("remainder order must be at least 1");
  if (n_max > kMaxExactOrder) {
    throw OverflowError("remainder order " + std::to_string(n_max) + " exceeds the exact-arithmetic cap of " +
                        std::to_string(kMaxExactOrder) + " (coefficient overflow)");
  }
  const ExactPolynomial P = chord_polynomial(shock, flux);
  std::vector<ExactPolynomial> out;
  out.reserve(static_cast<std::size_t>(n_max));
  out.push_back(P.derivative());
  for (int n = 2; n <= n_max; ++n) {
    out.push_back((P * out.back()).derivative());
    if (out.back().max_coefficient_bits() > kMaxCoefficientBits)
      throw OverflowError("remainder coefficients overflow the exact-arithmetic budget at n = " + std::to_string(n));
  }
  return out;
}

std::vector<RemainderReport> remainder_norms(const ShockData& shock, const std::vector<ExactPolynomial>& polys) {
  std::vector<RemainderReport> out;
  const double lo = shock.u_plus, hi = shock.u_minus;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& R = polys[i];
    double sup = std::max(std::abs(R.eval(lo)), std::abs(R.eval(hi)));
    for (double c : real_roots(R.derivative(), lo, hi)) {
      if (!std::isfinite(c) || c < lo || c > hi) throw RootFindingError("critical point outside the shock interval");
      sup = std::max(sup, std::abs(R.eval(c)));
    }
    out.push_back(make_report(shock, static_cast<int>(i) + 1, sup));
  }
  return out;
}

std::vector<long double> remainder_values_series(const ShockData& shock, const FluxModel& flux, int n, double u) {
  if (n < 1) throw ConfigError("remainder order must be at least 1");
  if (n > kMaxSeriesOrder) {
    throw OverflowError("series remainders are limited to n <= " + std::to_string(kMaxSeriesOrder) +
                        " (nested differentiation loses accuracy beyond)");
  }
  if (!flux.has_jets()) throw FluxMismatch("flux '" + flux.name() + "' has no Taylor-series evaluator");
  const std::size_t length = static_cast<std::size_t>(n) + 1;
  const ExtJet P = chord_jet(shock, flux, ExtJet::variable(static_cast<LD>(u), length));
  std::vector<LD> values;
  ExtJet R = P.derivative();
  values.push_back(R.value());
  for (int k = 2; k <= n; ++k) {
    R = (P * R).derivative();
    values.push_back(R.value());
  }
  return values;
}

std::vector<RemainderReport> remainder_norms_series(const ShockData& shock, const FluxModel& flux, int n_max) {
  std::vector<double> sup(static_cast<std::size_t>(std::max(n_max, 0)), 0.0);
  for (int i = 0; i < kSeriesSamples; ++i) {
    const double u = shock.u_plus + shock.delta * i / (kSeriesSamples - 1);
    const auto v = remainder_values_series(shock, flux, n_max, u);
    for (std::size_t k = 0; k < v.size(); ++k) sup[k] = std::max(sup[k], static_cast<double>(std::fabs(v[k])));
  }
  std::vector<RemainderReport> out;
  for (std::size_t k = 0; k < sup.size(); ++k) out.push_back(make_report(shock, static_cast<int>(k) + 1, sup[k]));
  return out;
}

std::vector<RemainderReport> remainder_table(const ShockData& shock, const FluxModel& flux, int n_max) {
  if (flux.is_polynomial()) return remainder_norms(shock, remainder_sequence(shock, flux, n_max));
  return remainder_norms_series(shock, flux, n_max);
}

double verify_qn_identity(const ShockData& shock, const FluxModel& flux, int n, const WaveProfile& profile) {
  if (n < 1 || n > kMaxSeriesOrder) throw ConfigError("verify_qn_identity supports 1 <= n <= 6");
  if (!profile.shock.same_as(shock)) throw ShockMismatch("profile belongs to a different shock");
  if (!flux.has_jets()) throw FluxMismatch("flux '" + flux.name() + "' has no Taylor-series evaluator");

  const bool closed_form = is_burgers(flux);
  const std::size_t length = static_cast<std::size_t>(n) + 2;
  const LD a2 = static_cast<LD>(shock.a) * shock.a;
  const LD lam = shock.lambda;
  const LD gamma_n = std::pow(static_cast<LD>(shock.gamma()), n);
  std::vector<ExactPolynomial> exact;
  if (flux.is_polynomial()) exact = remainder_sequence(shock, flux, n);
  const LD kappa = static_cast<LD>(shock.delta) / (2.0L * (a2 - lam * lam));

  double x_extent = 0.0;
  for (double x : profile.xs) x_extent = std::max(x_extent, std::abs(x));
  const double x_lim = 0.8 * x_extent;

  double worst = 0.0;
  for (std::size_t i = 0; i < profile.xs.size(); ++i) {
    const double x = profile.xs[i];
    if (std::abs(x) > x_lim) continue;
    ExtJet U;
    if (closed_form) {
      const auto sig = logistic_series(kappa, x, length);
      std::vector<LD> c(length);
      for (std::size_t k = 0; k < length; ++k) c[k] = -static_cast<LD>(shock.delta) * sig[k];
      c[0] += shock.u_minus;
      U = ExtJet(std::move(c));
    } else {
      U = wave_series(shock, flux, profile.us[i], length);
    }
    const ExtJet q1 = (a2 - lam * flux.jet_f1(U)) * U.derivative();
    ExtJet q = q1;
    for (int k = 1; k < n; ++k) q = q1 + lam * q.derivative();
    const LD lhs = q.value();
    const LD u = U.value();
    const LD P = chord_jet(shock, flux, ExtJet::constant(u, 1)).value();
    if (P == 0.0L) continue;
    const LD Rn = exact.empty() ? remainder_values_series(shock, flux, n, static_cast<double>(u)).back()
                                : static_cast<LD>(exact.back().eval(static_cast<double>(u)));
    const LD rhs = P * (1.0L - gamma_n * Rn);
    worst = std::max(worst, static_cast<double>(std::fabs(lhs - rhs) / std::fabs(P)));
  }
  return worst;
}

}  // namespace ceshock
