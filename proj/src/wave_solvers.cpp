#include "ceshock/wave_solvers.hpp"

#include <math.h>  // boost 1.74 pchip uses unqualified isnan

#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock {

namespace {

constexpr int kDiffusionSamples = 1001;

// Shortest representation that parses back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Samples D on [lo, hi]; throws DegenerateDiffusion at the first D <= 0.
void require_positive_diffusion(const std::function<double(double)>& D, double lo, double hi,
                                const std::string& what) {
  for (int i = 0; i < kDiffusionSamples; ++i) {
    const double u = lo + (hi - lo) * i / (kDiffusionSamples - 1);
    const double d = D(u);
    if (!(d > 0.0)) {
      throw DegenerateDiffusion(what + ": diffusion coefficient D(u) = " + num(d) + " <= 0 at u = " + num(u));
    }
  }
}

}  // namespace

std::string ModelSpec::tag() const {
  switch (kind) {
    case ModelKind::relaxation: return "relaxation";
    case ModelKind::v1: return "v1";
    case ModelKind::w1: return "w1";
    case ModelKind::v2: return "v2";
    case ModelKind::phi_mu: return "phi_mu(" + num(mu) + ")";
  }
  return "unknown";
}

ModelSpec ModelSpec::parse(const std::string& text) {
  if (text == "relaxation") return {ModelKind::relaxation, 0.0};
  if (text == "v1") return {ModelKind::v1, 0.0};
  if (text == "w1") return {ModelKind::w1, 0.0};
  if (text == "v2") return {ModelKind::v2, 0.0};
  std::string body;
  if (text.rfind("phi_mu:", 0) == 0) {
    body = text.substr(7);
  } else if (text.rfind("phi_mu(", 0) == 0 && text.back() == ')') {
    body = text.substr(7, text.size() - 8);
  }
  if (!body.empty()) {
    try {
      std::size_t used = 0;
      const double mu = std::stod(body, &used);
      if (used == body.size() && std::isfinite(mu)) return {ModelKind::phi_mu, mu};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown model '" + text + "' (expected relaxation, v1, w1, v2 or phi_mu:<mu>)");
}

ResolvedSettings resolve(const OdeSettings& s, const ShockData& shock) {
  ResolvedSettings r;
  const double a2 = shock.a * shock.a;
  r.rel_tol = s.rel_tol;
  r.abs_tol = s.abs_tol;
  r.x_max = s.x_max.value_or(std::max(50.0, 40.0 * a2 / shock.delta));
  r.tail_tol = s.tail_tol.value_or(1e-13 * shock.delta + 1e-15);
  r.grid_dx = s.grid_dx.value_or(std::min(0.05, 0.005 / shock.delta));
  r.margin_h = s.margin_h.value_or(0.5 * a2);
  for (double v : {r.rel_tol, r.abs_tol, r.x_max, r.tail_tol, r.grid_dx, r.margin_h}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("ODE settings must be positive and finite");
  }
  if (r.abs_tol > r.rel_tol) throw ConfigError("ODE settings: abs_tol must not exceed rel_tol");
  if (r.margin_h >= a2) throw ConfigError("ODE settings: margin h must be below a^2");
  if (r.grid_dx > r.x_max) throw ConfigError("ODE settings: grid_dx must not exceed x_max");
  return r;
}

std::vector<double> uniform_grid(double x_max, double dx) {
  const auto n = static_cast<long>(std::ceil(x_max / dx - 1e-9));
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(2 * n + 1));
  for (long i = -n; i <= n; ++i) xs.push_back(static_cast<double>(i) * dx);
  if (std::abs(xs.back() - x_max) <= 1e-9 * x_max) {
    xs.front() = -x_max;
    xs.back() = x_max;
  }
  return xs;
}

// ---------------------------------------------------------------------------

struct ProfileInterpolant::Impl {
  double x_lo, x_hi, u_lo, u_hi;
  std::optional<boost::math::interpolators::cubic_hermite<std::vector<double>>> hermite;
  std::optional<boost::math::interpolators::pchip<std::vector<double>>> pchip;
};

ProfileInterpolant::ProfileInterpolant(const WaveProfile& p) : impl_(std::make_unique<Impl>()) {
  if (p.xs.size() < 4 || p.xs.size() != p.us.size())
    throw ConfigError("profile needs at least 4 samples with matching x and u columns");
  impl_->x_lo = p.xs.front();
  impl_->x_hi = p.xs.back();
  impl_->u_lo = p.us.front();
  impl_->u_hi = p.us.back();
  if (p.slopes.size() == p.xs.size()) {
    impl_->hermite.emplace(std::vector<double>(p.xs), std::vector<double>(p.us), std::vector<double>(p.slopes));
  } else {
    impl_->pchip.emplace(std::vector<double>(p.xs), std::vector<double>(p.us));
  }
}

ProfileInterpolant::~ProfileInterpolant() = default;
ProfileInterpolant::ProfileInterpolant(ProfileInterpolant&&) noexcept = default;

double ProfileInterpolant::operator()(double x) const {
  if (x <= impl_->x_lo) return impl_->u_lo;
  if (x >= impl_->x_hi) return impl_->u_hi;
  return impl_->hermite ? (*impl_->hermite)(x) : (*impl_->pchip)(x);
}

ProfileCheck check_profile(const WaveProfile& p, double tail_tol) {
  ProfileCheck c;
  std::ostringstream msg;
  const double lo = p.shock.u_plus, hi = p.shock.u_minus;
  // Below this distance to an end state consecutive samples may round to the
  // same double, so only the weak forms are required there.
  const double floor = 1e-10 * p.shock.delta;
  auto resolvable = [&](double u) { return u - lo > floor && hi - u > floor; };
  for (std::size_t i = 0; i < p.us.size(); ++i) {
    const double x = p.xs[i], u = p.us[i];
    if (!(u >= lo && u <= hi) || (resolvable(u) && !(u > lo && u < hi))) {
      if (c.bounded) msg << "out of bounds at x = " << num(x) << "; ";
      c.bounded = false;
    }
    if (i + 1 < p.us.size()) {
      const double next = p.us[i + 1];
      const bool strict = resolvable(u) && resolvable(next);
      if (strict ? !(next < u) : !(next <= u)) {
        if (c.decreasing) msg << "not decreasing at x = " << num(x) << "; ";
        c.decreasing = false;
      }
    }
  }
  if (!(p.normalization_residual <= 1e-9 * p.shock.delta)) {
    c.normalized = false;
    msg << "normalization residual " << num(p.normalization_residual) << "; ";
  }
  if (!p.us.empty()) {
    const double left = std::abs(p.us.front() - hi), right = std::abs(p.us.back() - lo);
    if (!(left <= tail_tol && right <= tail_tol)) {
      c.tails = false;
      msg << "tail distances " << num(left) << ", " << num(right) << "; ";
    }
  }
  c.message = msg.str();
  return c;
}

double diffusion_coefficient(const ShockData& shock, const FluxModel& flux, const ModelSpec& model, double u) {
  const double a2 = shock.a * shock.a;
  switch (model.kind) {
    case ModelKind::relaxation: return a2 - shock.lambda * shock.lambda;
    case ModelKind::phi_mu: return a2 - model.mu;
    case ModelKind::v1: return a2 - shock.lambda * flux.f1(u);
    case ModelKind::w1: {
      const double d = flux.f1(u);
      return a2 - d * d;
    }
    case ModelKind::v2: break;
  }
  throw ConfigError("model '" + model.tag() + "' has no first-order diffusion coefficient");
}

// ---------------------------------------------------------------------------

ScalarWaveCurve::ScalarWaveCurve(const ShockData& shock, const FluxModel& flux, Diffusion diffusion,
                                 const ResolvedSettings& settings)
    : shock_(shock), flux_(flux), diffusion_(std::move(diffusion)), log_tail_(std::log(settings.tail_tol)) {
  const double mid = shock_.midpoint();
  ode::Tolerances<1> tol;
  tol.abs_tol[0] = settings.rel_tol;  // absolute accuracy in log-distance = relative accuracy in distance
  tol.rel_tol[0] = 0.0;
  const ode::StepControl ctl{};
  const double log_delta = std::log(shock_.delta);
  bool escaped = false;
  auto below_tail = [this, log_delta, &escaped](double, const std::array<double, 1>& y) {
    escaped = y[0] > log_delta;
    return escaped || y[0] < log_tail_;
  };

  auto rhs_plus = [this](double, const std::array<double, 1>& y) {
    const double z = std::exp(y[0]);
    return std::array<double, 1>{chord_ratio_plus(shock_, flux_, z) / diffusion_(shock_.u_plus + z)};
  };
  plus_side_ = ode::integrate_dopri5<1>(rhs_plus, 0.0, {std::log(mid - shock_.u_plus)}, settings.x_max, tol, ctl,
                                        below_tail);

  if (escaped) throw TrajectoryEscape("first-order profile left the shock interval");

  auto rhs_minus = [this](double, const std::array<double, 1>& y) {
    const double z = std::exp(y[0]);
    return std::array<double, 1>{chord_ratio_minus(shock_, flux_, z) / diffusion_(shock_.u_minus - z)};
  };
  minus_side_ = ode::integrate_dopri5<1>(rhs_minus, 0.0, {std::log(shock_.u_minus - mid)}, settings.x_max, tol,
                                         ctl, below_tail);
  if (escaped) throw TrajectoryEscape("first-order profile left the shock interval");
  plus_truncated_ = plus_side_.final_state()[0] < log_tail_;
  minus_truncated_ = minus_side_.final_state()[0] < log_tail_;
}

double ScalarWaveCurve::u(double x) const {
  if (x >= 0.0) {
    if (plus_truncated_ && x > plus_side_.t_end()) return shock_.u_plus;
    return shock_.u_plus + std::exp(plus_side_(x)[0]);
  }
  if (minus_truncated_ && -x > minus_side_.t_end()) return shock_.u_minus;
  return shock_.u_minus - std::exp(minus_side_(-x)[0]);
}

double ScalarWaveCurve::slope(double x) const {
  if (x >= 0.0) {
    if (plus_truncated_ && x > plus_side_.t_end()) return 0.0;
    const double z = std::exp(plus_side_(x)[0]);
    return z * chord_ratio_plus(shock_, flux_, z) / diffusion_(shock_.u_plus + z);
  }
  if (minus_truncated_ && -x > minus_side_.t_end()) return 0.0;
  const double z = std::exp(minus_side_(-x)[0]);
  return z * chord_ratio_minus(shock_, flux_, z) / diffusion_(shock_.u_minus - z);
}

// ---------------------------------------------------------------------------

bool is_burgers(const FluxModel& flux) {
  const auto& c = flux.exact_coeffs();
  return c && c->size() == 3 && sgn((*c)[0]) == 0 && sgn((*c)[1]) == 0 && (*c)[2] == Rational(1, 2);
}

double burgers_phi_mu_closed_form(const ShockData& shock, const FluxModel& flux, double mu, double x) {
  if (!is_burgers(flux)) throw FluxMismatch("closed-form profile requires Burgers' flux, got '" + flux.name() + "'");
  const double D = shock.a * shock.a - mu;
  if (!(D > 0.0)) throw DegenerateDiffusion("closed-form profile needs a^2 - mu > 0");
  return shock.u_minus - shock.delta / (1.0 + std::exp(-shock.delta * x / (2.0 * D)));
}

double burgers_closed_form(const ShockData& shock, const FluxModel& flux, double x) {
  return burgers_phi_mu_closed_form(shock, flux, shock.lambda * shock.lambda, x);
}

WaveProfile sample_curve(const ScalarWaveCurve& curve, const ModelSpec& model, const ShockData& shock,
                         const ResolvedSettings& settings) {
  WaveProfile p;
  p.model = model;
  p.shock = shock;
  p.xs = uniform_grid(settings.x_max, settings.grid_dx);
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

WaveProfile solve_phi_mu(const ShockData& shock, const FluxModel& flux, double mu, const OdeSettings& settings) {
  const ResolvedSettings rs = resolve(settings, shock);
  const double a2 = shock.a * shock.a;
  if (!(mu < a2 - rs.margin_h)) {
    throw MarginError("phi_mu requires mu < a^2 - h: mu = " + num(mu) + ", a^2 - h = " + num(a2 - rs.margin_h));
  }
  const double D = a2 - mu;
  ScalarWaveCurve curve(shock, flux, [D](double) { return D; }, rs);
  return sample_curve(curve, {ModelKind::phi_mu, mu}, shock, rs);
}

WaveProfile solve_first_order(const ShockData& shock, const FluxModel& flux, ModelKind kind,
                              const OdeSettings& settings) {
  if (kind != ModelKind::relaxation && kind != ModelKind::v1 && kind != ModelKind::w1)
    throw ConfigError("solve_first_order handles relaxation, v1 and w1 only");
  const ResolvedSettings rs = resolve(settings, shock);
  const ModelSpec model{kind, 0.0};
  auto D = [shock, flux, model](double u) { return diffusion_coefficient(shock, flux, model, u); };
  require_positive_diffusion(D, shock.u_plus, shock.u_minus, model.tag());
  if (kind == ModelKind::w1)
    require_positive_diffusion(D, shock.u_plus - shock.delta, shock.u_minus + shock.delta, "w1 (padded interval)");
  ScalarWaveCurve curve(shock, flux, D, rs);
  return sample_curve(curve, model, shock, rs);
}

double invert_implicit(const ShockData& shock, const FluxModel& flux, ModelKind kind, double x,
                       std::optional<double> tail_tol) {
  if (kind != ModelKind::relaxation && kind != ModelKind::v1 && kind != ModelKind::w1)
    throw ConfigError("invert_implicit handles relaxation, v1 and w1 only");
  const ModelSpec model{kind, 0.0};
  auto D = [&](double u) { return diffusion_coefficient(shock, flux, model, u); };
  require_positive_diffusion(D, shock.u_plus, shock.u_minus, model.tag());
  const double mid = shock.midpoint();
  if (x == 0.0) return mid;

  // F(u) - F(mid) in the log-distance variable of the side that contains u,
  // which keeps the integrand bounded near the end state.
  //   u = u_+ + e^s:  dF = D / (P/z) ds,   u = u_- - e^s:  dF = -D / (P/z) ds
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto F = [&](double u) {
    if (u == mid) return 0.0;
    if (u < mid) {
      auto g = [&](double s) {
        const double z = std::exp(s);
        return D(shock.u_plus + z) / chord_ratio_plus(shock, flux, z);
      };
      return GK::integrate(g, std::log(mid - shock.u_plus), std::log(u - shock.u_plus), 15, 1e-14);
    }
    auto g = [&](double s) {
      const double z = std::exp(s);
      return -D(shock.u_minus - z) / chord_ratio_minus(shock, flux, z);
    };
    return GK::integrate(g, std::log(shock.u_minus - mid), std::log(shock.u_minus - u), 15, 1e-14);
  };

  const double pad = tail_tol.value_or(1e-13 * shock.delta + 1e-15);
  double lo = shock.u_plus + pad, hi = shock.u_minus - pad;  // F(lo) > 0 > F(hi)
  if (x > 0.0) {
    hi = mid;
    if (!(F(lo) >= x)) throw BracketError("invert_implicit: x = " + num(x) + " is beyond the padded right tail");
  } else {
    lo = mid;
    if (!(F(hi) <= x)) throw BracketError("invert_implicit: x = " + num(x) + " is beyond the padded left tail");
  }
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    if (F(m) > x) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

SandwichConstants gamma_constants(const ShockData& shock, const FluxModel& flux, double b) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < kDiffusionSamples; ++i) {
    const double u = shock.u_plus + shock.delta * i / (kDiffusionSamples - 1);
    const double d = flux.f1(u);
    lo = std::min(lo, d * d);
    hi = std::max(hi, d * d);
  }
  SandwichConstants c{lo - b * shock.delta, hi + b * shock.delta};
  if (!(c.upper < shock.a * shock.a)) throw MarginError("Gamma_+ = " + num(c.upper) + " is not below a^2");
  return c;
}

SandwichConstants lambda_constants(const ShockData& shock, const FluxModel& flux, double b) {
  const double l1 = shock.lambda * flux.f1(shock.u_minus), l2 = shock.lambda * flux.f1(shock.u_plus);
  SandwichConstants c{std::min(l1, l2) - b * shock.delta, std::max(l1, l2) + b * shock.delta};
  if (!(c.upper < shock.a * shock.a)) throw MarginError("Lambda_+ = " + num(c.upper) + " is not below a^2");
  return c;
}

OrderingReport check_ordering(const WaveProfile& steep, const WaveProfile& mid, const WaveProfile& shallow,
                              double tol) {
  OrderingReport r;
  const ProfileInterpolant s_at(steep), w_at(shallow);
  for (std::size_t i = 0; i < mid.xs.size(); ++i) {
    const double x = mid.xs[i];
    if (x == 0.0) continue;
    const double sg = x > 0.0 ? 1.0 : -1.0;
    const double lo = sg * s_at(x), m = sg * mid.us[i], hi = sg * w_at(x);
    const double violation = std::max(lo - m, m - hi);
    const bool resolved = hi - lo > tol;
    ++r.checked;
    if (resolved) ++r.strict;
    r.worst = std::max(r.worst, violation);
    if (resolved ? !(violation < 0.0) : !(violation <= tol)) ++r.violations;
  }
  r.ok = r.violations == 0 && r.checked > 0;
  return r;
}

}  // namespace ceshock
