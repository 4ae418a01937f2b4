#pragma once

#include <string>

#include "json.hpp"

#include "ceshock/analysis.hpp"
#include "ceshock/remainders.hpp"
#include "ceshock/wave_solvers.hpp"

namespace ceshock::io {

/// %.17g, so that doubles round-trip exactly.
std::string format_double(double v);

nlohmann::ordered_json shock_json(const ShockData& s);
nlohmann::ordered_json settings_json(const ResolvedSettings& r);
nlohmann::ordered_json profile_metadata(const WaveProfile& p, const std::string& flux_name,
                                        const ResolvedSettings& settings);

/// "x,u" rows, LF line endings.
std::string profile_csv(const WaveProfile& p);
/// "x,diff" rows.
std::string error_csv(const ErrorProfile& e);
/// "n,sup_norm,normalized,gamma_factor,gamma_n_times_norm" rows.
std::string remainder_csv(const std::vector<RemainderReport>& rows);

/// Reads an "x,u" file written by profile_csv. ConfigError on malformed input.
WaveProfile load_profile_csv(const std::string& path, const ShockData& shock, const ModelSpec& model);

/// Writes text to a file, replacing it. ConfigError if the path is not writable.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace ceshock::io
