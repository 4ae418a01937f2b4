#include "ceshock/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock {

namespace {

bool same_grid(const WaveProfile& a, const WaveProfile& b) { return a.xs == b.xs; }

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ErrorProfile error_profile(const WaveProfile& a, const WaveProfile& b) {
  if (!a.shock.same_as(b.shock)) throw ShockMismatch("cannot compare profiles of different shocks");
  ErrorProfile e;
  e.xs = a.xs;
  e.model_pair = {a.model_tag(), b.model_tag()};
  e.shock = a.shock;
  e.diffs.resize(a.xs.size());
  if (same_grid(a, b)) {
    for (std::size_t i = 0; i < a.xs.size(); ++i) e.diffs[i] = std::abs(a.us[i] - b.us[i]);
  } else {
    WaveProfile monotone = b;
    monotone.slopes.clear();
    const ProfileInterpolant at(monotone);
    for (std::size_t i = 0; i < a.xs.size(); ++i) e.diffs[i] = std::abs(a.us[i] - at(a.xs[i]));
  }
  return e;
}

double uniform_norm(const ErrorProfile& e) {
  double m = 0.0;
  for (double d : e.diffs) m = std::max(m, d);
  return m;
}

double weighted_norm(const ErrorProfile& e, double c, double x_min) {
  if (!(c > 0.0) || !(x_min > 0.0)) throw ConfigError("weighted norm needs c > 0 and x_min > 0");
  double m = 0.0;
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    const double ax = std::abs(e.xs[i]);
    if (ax < x_min * (1.0 - 1e-12)) continue;
    // diff / (|x| e^{-c delta |x|}) evaluated in log form to avoid overflow
    if (e.diffs[i] == 0.0) continue;
    m = std::max(m, std::exp(std::log(e.diffs[i] / ax) + c * e.shock.delta * ax));
  }
  return m;
}

bool near_origin_bound(const ErrorProfile& e, double x_min) {
  double slope = 0.0;
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    const double ax = std::abs(e.xs[i]);
    if (ax >= x_min * (1.0 - 1e-12) && ax <= 2.0 * x_min * (1.0 + 1e-12)) slope = std::max(slope, e.diffs[i] / ax);
  }
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    const double ax = std::abs(e.xs[i]);
    if (ax < x_min * (1.0 - 1e-12) && !(e.diffs[i] <= slope * ax + 1e-9 * e.shock.delta)) return false;
  }
  return true;
}

double default_weight_rate(double a, std::optional<double> h) {
  const double a2 = a * a;
  return 1.0 / (2.0 * (2.0 * a2 - h.value_or(0.5 * a2)));
}

WaveProfile solve_model(const ShockData& shock, const FluxModel& flux, const ModelSpec& model, const OdeSettings& ode,
                        const ShootingSettings& shooting) {
  switch (model.kind) {
    case ModelKind::phi_mu: return solve_phi_mu(shock, flux, model.mu, ode);
    case ModelKind::v2: return solve_v2(shock, flux, shooting, ode);
    default: return solve_first_order(shock, flux, model.kind, ode);
  }
}

std::string to_string(NormKind k) { return k == NormKind::uniform ? "uniform" : "weighted"; }

NormKind parse_norm_kind(const std::string& s) {
  if (s == "uniform") return NormKind::uniform;
  if (s == "weighted") return NormKind::weighted;
  throw ConfigError("unknown norm kind '" + s + "' (expected uniform or weighted)");
}

std::pair<double, double> fit_loglog(const std::vector<double>& deltas, const std::vector<double>& norms) {
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (std::isfinite(norms[i]) && norms[i] > 0.0) {
      X.push_back(std::log(deltas[i]));
      Y.push_back(std::log(norms[i]));
    }
  }
  const double n = static_cast<double>(X.size());
  if (X.size() < 2) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double r = Y[i] - (my + slope * (X[i] - mx));
    rss += r * r;
  }
  return {slope, std::sqrt(rss / n)};
}

nlohmann::ordered_json ScalingReport::to_json() const {
  nlohmann::ordered_json j;
  j["deltas"] = deltas;
  nlohmann::ordered_json ns = nlohmann::ordered_json::array();
  for (double v : norms) {
    if (std::isfinite(v)) {
      ns.push_back(v);
    } else {
      ns.push_back(nullptr);
    }
  }
  j["norms"] = ns;
  j["fitted_exponent"] = fitted_exponent;
  j["fit_residual"] = fit_residual;
  j["norm_kind"] = to_string(norm_kind);
  j["model_pair"] = {model_pair.first, model_pair.second};
  j["failures"] = failures;
  return j;
}

std::string ScalingReport::to_csv() const {
  std::ostringstream os;
  os << "delta,norm,status\n";
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    os << fmt17(deltas[i]) << ',' << (std::isfinite(norms[i]) ? fmt17(norms[i]) : "nan") << ','
       << (failures[i].empty() ? "ok" : "failed") << '\n';
  }
  return os.str();
}

ScalingReport scaling_fit(const FluxModel& flux, double a, double center, const std::vector<double>& deltas,
                          const std::pair<ModelSpec, ModelSpec>& models, NormKind kind, const ScalingOptions& opts) {
  if (deltas.size() < 4) throw ConfigError("scaling fit needs at least 4 shock strengths");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw ConfigError("shock strengths must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw ConfigError("shock strengths must be strictly decreasing");
  }
  const double c = opts.c.value_or(default_weight_rate(a));

  struct Entry {
    double norm;
    std::string failure;
  };
  auto run = [&](double delta) -> Entry {
    try {
      const ShockData shock = make_centered_shock(flux, center, delta, a);
      const auto pa = solve_model(shock, flux, models.first, opts.ode, opts.shooting);
      const auto pb = solve_model(shock, flux, models.second, opts.ode, opts.shooting);
      const auto e = error_profile(pa, pb);
      if (kind == NormKind::uniform) return {uniform_norm(e), ""};
      const double x_min = opts.x_min.value_or(resolve(opts.ode, shock).grid_dx);
      if (!near_origin_bound(e, x_min)) return {std::numeric_limits<double>::quiet_NaN(), "near-origin bound failed"};
      return {weighted_norm(e, c, x_min), ""};
    } catch (const Error& err) {
      return {std::numeric_limits<double>::quiet_NaN(), err.what()};
    }
  };

  std::vector<Entry> entries;
  if (opts.parallel) {
    std::vector<std::future<Entry>> futs;
    for (double d : deltas) futs.push_back(std::async(std::launch::async, run, d));
    for (auto& f : futs) entries.push_back(f.get());
  } else {
    for (double d : deltas) entries.push_back(run(d));
  }

  ScalingReport rep;
  rep.deltas = deltas;
  rep.norm_kind = kind;
  rep.model_pair = {models.first.tag(), models.second.tag()};
  std::size_t ok = 0;
  for (const auto& e : entries) {
    rep.norms.push_back(e.norm);
    rep.failures.push_back(e.failure);
    if (e.failure.empty()) ++ok;
  }
  if (ok < 4) {
    std::string first;
    for (const auto& f : rep.failures)
      if (!f.empty()) {
        first = f;
        break;
      }
    throw SolverError("scaling fit: only " + std::to_string(ok) + " of " + std::to_string(deltas.size()) +
                      " shock strengths succeeded (" + first + ")");
  }
  std::tie(rep.fitted_exponent, rep.fit_residual) = fit_loglog(rep.deltas, rep.norms);
  return rep;
}

PhiMuBoundFit fit_phi_mu_bound(const ShockData& shock, const FluxModel& flux, double mu1, double mu2,
                          const OdeSettings& ode, double margin) {
  if (mu1 == mu2) throw ConfigError("the two comparison parameters must differ");
  const double a2 = shock.a * shock.a;
  double rate = std::numeric_limits<double>::infinity();
  for (double mu : {mu1, mu2}) {
    for (double ue : {shock.u_minus, shock.u_plus})
      rate = std::min(rate, std::abs(flux.f1(ue) - shock.lambda) / (a2 - mu));
  }
  PhiMuBoundFit fit;
  fit.c = 0.5 * rate / shock.delta;
  const double scale = shock.delta * shock.delta * std::abs(mu1 - mu2);

  auto max_ratio = [&](const OdeSettings& st) {
    const auto p1 = solve_phi_mu(shock, flux, mu1, st);
    const auto p2 = solve_phi_mu(shock, flux, mu2, st);
    const auto e = error_profile(p1, p2);
    const double dx = resolve(st, shock).grid_dx;
    return weighted_norm(e, fit.c, dx) / scale;
  };
  fit.C = max_ratio(ode);
  OdeSettings fine = ode;
  fine.grid_dx = 0.5 * resolve(ode, shock).grid_dx;
  fit.C_fine = max_ratio(fine);
  fit.ok = std::isfinite(fit.C) && fit.C > 0.0 && fit.C_fine <= margin * fit.C;
  return fit;
}

}  // namespace ceshock
