#include "ceshock/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock::io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json shock_json(const ShockData& s) {
  return {{"u_minus", s.u_minus}, {"u_plus", s.u_plus}, {"a", s.a}, {"lambda", s.lambda}, {"delta", s.delta}};
}

nlohmann::ordered_json settings_json(const ResolvedSettings& r) {
  return {{"rel_tol", r.rel_tol}, {"abs_tol", r.abs_tol},   {"x_max", r.x_max},
          {"tail_tol", r.tail_tol}, {"grid_dx", r.grid_dx}, {"margin_h", r.margin_h}};
}

nlohmann::ordered_json profile_metadata(const WaveProfile& p, const std::string& flux_name,
                                        const ResolvedSettings& settings) {
  nlohmann::ordered_json j;
  j["model_tag"] = p.model_tag();
  j["flux"] = flux_name;
  j["shock"] = shock_json(p.shock);
  j["settings"] = settings_json(settings);
  j["points"] = p.xs.size();
  j["normalization_residual"] = p.normalization_residual;
  return j;
}

std::string profile_csv(const WaveProfile& p) {
  std::string out = "x,u\n";
  out.reserve(p.xs.size() * 44);
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    out += format_double(p.xs[i]);
    out += ',';
    out += format_double(p.us[i]);
    out += '\n';
  }
  return out;
}

std::string error_csv(const ErrorProfile& e) {
  std::string out = "x,diff\n";
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    out += format_double(e.xs[i]);
    out += ',';
    out += format_double(e.diffs[i]);
    out += '\n';
  }
  return out;
}

std::string remainder_csv(const std::vector<RemainderReport>& rows) {
  std::ostringstream os;
  os << "n,sup_norm,normalized,gamma_factor,gamma_n_times_norm\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.sup_norm) << ',' << format_double(r.normalized) << ','
       << format_double(r.gamma_factor) << ',' << format_double(r.gamma_n_times_norm) << '\n';
  }
  return os.str();
}

WaveProfile load_profile_csv(const std::string& path, const ShockData& shock, const ModelSpec& model) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "x,u") throw ConfigError("'" + path + "' is not an x,u profile file");
  WaveProfile p;
  p.model = model;
  p.shock = shock;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      const double x = std::stod(line.substr(0, comma), &used);
      const std::string rest = line.substr(comma + 1);
      const double u = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing characters");
      if (!p.xs.empty() && !(x > p.xs.back())) throw std::invalid_argument("x not increasing");
      p.xs.push_back(x);
      p.us.push_back(u);
    } catch (const std::exception& e) {
      throw ConfigError("'" + path + "' line " + std::to_string(row) + ": " + e.what());
    }
  }
  if (p.xs.size() < 4) throw ConfigError("'" + path + "' holds fewer than 4 samples");
  double best = std::abs(p.xs[0]);
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    if (std::abs(p.xs[i]) <= best) {
      best = std::abs(p.xs[i]);
      p.normalization_residual = std::abs(p.us[i] - shock.midpoint());
    }
  }
  p.x_resolved_lo = p.xs.front();
  p.x_resolved_hi = p.xs.back();
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ceshock::io
