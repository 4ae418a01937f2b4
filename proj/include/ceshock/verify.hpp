#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ceshock {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  double seconds = 0.0;  ///< wall time; reported on the console only
};

struct SuiteResult {
  std::string suite;
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
  /// Deterministic report: no timings.
  nlohmann::ordered_json to_json() const;
};

/// burgers {1, 4, 5, 8}, general {2, 3, 6}, second_order {7, 11},
/// remainders {9, 10}, all {1..11}. ConfigError for other names.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one acceptance check (1..11). Solver failures count as a failed
/// check and are recorded in the detail.
CriterionResult run_criterion(int id);
SuiteResult run_suite(const std::string& suite);

/// "PASS [ 1] title (details)" style console line.
std::string format_line(const CriterionResult& r);

}  // namespace ceshock
