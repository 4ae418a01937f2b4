#include "ceshock/flux_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock {

namespace {

constexpr int kConvexitySamples = 1001;

std::atomic<bool> g_chord_sign_fault{false};

std::vector<double> to_doubles(const std::vector<Rational>& q) {
  std::vector<double> d;
  d.reserve(q.size());
  for (const auto& c : q) d.push_back(to_double(c));
  return d;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

// Divided difference (p(u+z) - p(u))/z through the Horner recurrences
//   g_k(x) = c_k + x g_{k+1}(x),  d_k = g_{k+1}(u+z) + u d_{k+1}.
double horner_secant(const std::vector<double>& c, double u, double z) {
  const double v = u + z;
  double gv = 0.0, d = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = gv + u * d;
    gv = *it + v * gv;
  }
  return d;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

FluxModel::FluxModel(std::string name, Functions fns, double M)
    : name_(std::move(name)), fns_(std::move(fns)), M_(M) {
  if (!fns_.f || !fns_.f1 || !fns_.f2) throw ConfigError("flux '" + name_ + "' is missing f, f' or f''");
  if (!(M_ > 0.0) || !std::isfinite(M_)) throw ConfigError("flux working interval bound M must be positive");
  convexity_bound_ = min_f2(-M_, M_);
  if (!(convexity_bound_ > 0.0)) {
    throw ConvexityError("flux '" + name_ + "' is not strictly convex on [-M, M]: inf f'' = " +
                         fmt_num(convexity_bound_));
  }
}

FluxModel FluxModel::polynomial(std::string name, std::vector<Rational> coeffs, double M) {
  while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
  const auto c = to_doubles(coeffs);
  const auto c1 = derivative_coeffs(c);
  const auto c2 = derivative_coeffs(c1);
  Functions fns;
  fns.f = [c](double u) { return horner(c, u); };
  fns.f1 = [c1](double u) { return horner(c1, u); };
  fns.f2 = [c2](double u) { return horner(c2, u); };
  fns.secant = [c](double u, double z) { return horner_secant(c, u, z); };
  std::vector<long double> cl(coeffs.size()), cl1;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    cl[k] = static_cast<long double>(coeffs[k].get_num().get_d()) /
            static_cast<long double>(coeffs[k].get_den().get_d());
  }
  for (std::size_t k = 1; k < cl.size(); ++k) cl1.push_back(static_cast<long double>(k) * cl[k]);
  fns.jet_f = [cl](const ExtJet& u) { return horner(cl, u); };
  fns.jet_f1 = [cl1](const ExtJet& u) { return horner(cl1, u); };
  FluxModel m(std::move(name), std::move(fns), M);
  m.exact_coeffs_ = std::move(coeffs);
  return m;
}

FluxModel FluxModel::polynomial(std::string name, const std::vector<double>& coeffs, double M) {
  std::vector<Rational> q;
  q.reserve(coeffs.size());
  for (double v : coeffs) q.push_back(to_rational(v));
  return polynomial(std::move(name), std::move(q), M);
}

double FluxModel::secant(double u, double z) const {
  if (fns_.secant) return fns_.secant(u, z);
  if (z == 0.0) return fns_.f1(u);
  return (fns_.f(u + z) - fns_.f(u)) / z;
}

ExtJet FluxModel::jet_f(const ExtJet& u) const {
  if (!fns_.jet_f) throw FluxMismatch("flux '" + name_ + "' has no Taylor-series evaluator");
  return fns_.jet_f(u);
}

ExtJet FluxModel::jet_f1(const ExtJet& u) const {
  if (!fns_.jet_f1) throw FluxMismatch("flux '" + name_ + "' has no Taylor-series evaluator");
  return fns_.jet_f1(u);
}

FluxModel FluxModel::reflected() const {
  const auto src = fns_;
  Functions g;
  g.f = [src](double v) { return src.f(-v); };
  g.f1 = [src](double v) { return -src.f1(-v); };
  g.f2 = [src](double v) { return src.f2(-v); };
  const FluxModel self = *this;
  g.secant = [self](double v, double z) { return -self.secant(-v, -z); };
  if (src.jet_f) g.jet_f = [src](const ExtJet& v) { return src.jet_f(-v); };
  if (src.jet_f1) g.jet_f1 = [src](const ExtJet& v) { return -src.jet_f1(-v); };
  FluxModel m(name_ + "_reflected", std::move(g), M_);
  if (exact_coeffs_) {
    auto c = *exact_coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    m.exact_coeffs_ = std::move(c);
  }
  return m;
}

double FluxModel::min_f2(double lo, double hi) const {
  double m = fns_.f2(lo);
  for (int i = 0; i < kConvexitySamples; ++i) {
    const double u = lo + (hi - lo) * i / (kConvexitySamples - 1);
    m = std::min(m, fns_.f2(u));
  }
  return m;
}

double FluxModel::max_f2(double lo, double hi) const {
  double m = fns_.f2(lo);
  for (int i = 0; i < kConvexitySamples; ++i) {
    const double u = lo + (hi - lo) * i / (kConvexitySamples - 1);
    m = std::max(m, fns_.f2(u));
  }
  return m;
}

std::vector<FluxModel> builtin_fluxes() {
  std::vector<FluxModel> out;
  out.push_back(FluxModel::polynomial("burgers", std::vector<Rational>{0, 0, Rational(1, 2)}, 2.0));

  FluxModel::Functions ex;
  ex.f = [](double u) { return std::exp(u); };
  ex.f1 = [](double u) { return std::exp(u); };
  ex.f2 = [](double u) { return std::exp(u); };
  ex.secant = [](double u, double z) { return z == 0.0 ? std::exp(u) : std::exp(u) * std::expm1(z) / z; };
  ex.jet_f = [](const ExtJet& u) { return exp(u); };
  ex.jet_f1 = [](const ExtJet& u) { return exp(u); };
  out.emplace_back("exponential", std::move(ex), 2.0);

  out.push_back(FluxModel::polynomial("quartic",
                                      std::vector<Rational>{0, 0, Rational(1, 2), 0, Rational(1, 12)}, 2.0));
  return out;
}

FluxModel builtin_flux(const std::string& name) {
  for (auto& f : builtin_fluxes())
    if (f.name() == name) return f;
  throw ConfigError("unknown flux '" + name + "' (available: burgers, exponential, quartic)");
}

bool ShockData::same_as(const ShockData& o) const {
  return u_minus == o.u_minus && u_plus == o.u_plus && a == o.a && lambda == o.lambda && delta == o.delta;
}

ShockData make_shock(const FluxModel& flux, double u_minus, double u_plus, double a) {
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus) || !std::isfinite(a))
    throw ConfigError("shock states and relaxation speed must be finite");
  if (!(u_minus > u_plus)) {
    throw AdmissibilityError("shock is not admissible: need u_minus > u_plus, got u_minus = " +
                             fmt_num(u_minus) + ", u_plus = " + fmt_num(u_plus));
  }
  if (!(a > 0.0)) throw ConfigError("relaxation speed a must be positive");
  const double M = flux.M();
  if (u_minus > M || u_plus < -M) {
    throw ConfigError("shock states must lie in the working interval [-" + fmt_num(M) + ", " + fmt_num(M) +
                      "]");
  }
  ShockData s;
  s.u_minus = u_minus;
  s.u_plus = u_plus;
  s.a = a;
  s.delta = u_minus - u_plus;
  // Rankine-Hugoniot through the stable secant, so that both anchored forms
  // of the chord vanish exactly at their endpoints.
  s.lambda = flux.secant(u_plus, s.delta);

  const double lo = u_plus - s.delta, hi = u_minus + s.delta;
  double sup = std::max(std::abs(flux.f1(lo)), std::abs(flux.f1(hi)));
  for (int i = 0; i < kConvexitySamples; ++i)
    sup = std::max(sup, std::abs(flux.f1(lo + (hi - lo) * i / (kConvexitySamples - 1))));
  if (!(sup < a)) {
    throw SubcharacteristicError("sub-characteristic condition violated: sup |f'| = " + fmt_num(sup) +
                                 " >= a = " + fmt_num(a) + " on the padded shock interval");
  }
  return s;
}

ShockData make_centered_shock(const FluxModel& flux, double center, double delta, double a) {
  if (!(delta > 0.0)) throw AdmissibilityError("shock is not admissible: strength delta must be positive");
  return make_shock(flux, center + 0.5 * delta, center - 0.5 * delta, a);
}

double chord_ratio_plus(const ShockData& shock, const FluxModel& flux, double z) {
  const double r = flux.secant(shock.u_plus, z) - shock.lambda;
  return g_chord_sign_fault.load(std::memory_order_relaxed) ? -r : r;
}

double chord_ratio_minus(const ShockData& shock, const FluxModel& flux, double z) {
  const double r = shock.lambda - flux.secant(shock.u_minus, -z);
  return g_chord_sign_fault.load(std::memory_order_relaxed) ? -r : r;
}

double chord_P(const ShockData& shock, const FluxModel& flux, double u) {
  const double zp = u - shock.u_plus;
  const double zm = shock.u_minus - u;
  if (zp <= zm) return zp * chord_ratio_plus(shock, flux, zp);
  return zm * chord_ratio_minus(shock, flux, zm);
}

double chord_dP(const ShockData& shock, const FluxModel& flux, double u) {
  const double d = flux.f1(u) - shock.lambda;
  return g_chord_sign_fault.load(std::memory_order_relaxed) ? -d : d;
}

namespace testing {
void set_chord_sign_fault(bool enabled) { g_chord_sign_fault.store(enabled); }
bool chord_sign_fault() { return g_chord_sign_fault.load(); }
}  // namespace testing

}  // namespace ceshock
