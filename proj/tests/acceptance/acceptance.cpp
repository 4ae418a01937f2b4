// One line per acceptance criterion. Exit 0 iff every criterion passes,
// except those listed with --known-red, which must still fail.
#include <cstdio>
#include <cstring>
#include <iostream>
#include <set>
#include <string>

#include <spdlog/spdlog.h>

#include "ceshock/verify.hpp"

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  std::set<int> known_red;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-red") == 0 && i + 1 < argc) {
      known_red.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--known-red ID]...\n";
      return 2;
    }
  }

  const auto first = ceshock::run_suite("all");
  for (const auto& r : first.criteria) {
    std::cout << ceshock::format_line(r);
    if (known_red.count(r.id)) std::cout << (r.pass ? "  [listed as known red but passed]" : "  [known red]");
    std::cout << '\n';
  }

  const auto second = ceshock::run_suite("all");
  const bool deterministic = first.to_json().dump() == second.to_json().dump();
  std::cout << (deterministic ? "PASS" : "FAIL") << " [12] two full runs give identical JSON reports\n";

  bool ok = deterministic;
  for (const auto& r : first.criteria) ok = ok && (known_red.count(r.id) ? !r.pass : r.pass);
  std::cout << (ok ? "acceptance: expected outcome" : "acceptance: unexpected outcome") << '\n';
  return ok ? 0 : 1;
}
