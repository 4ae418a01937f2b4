#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ceshock/errors.hpp"
#include "ceshock/io.hpp"

using namespace ceshock;

namespace {

std::string temp_path(const char* name) { return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name; }

}  // namespace

TEST_CASE("17 significant digits round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("profile CSV round-trips bit-exactly") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  OdeSettings st;
  st.grid_dx = 0.5;
  const auto p = solve_first_order(s, burgers, ModelKind::v1, st);
  const std::string csv = io::profile_csv(p);
  CHECK(csv.rfind("x,u\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const auto path = temp_path("ceshock_io_roundtrip.csv");
  io::write_file(path, csv);
  const auto q = io::load_profile_csv(path, s, p.model);
  CHECK(q.xs == p.xs);
  CHECK(q.us == p.us);
  CHECK(io::profile_csv(q) == csv);
  std::remove(path.c_str());
}

TEST_CASE("malformed profile files are config errors") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  const auto path = temp_path("ceshock_io_bad.csv");
  io::write_file(path, "x,v\n0,0.2\n");
  CHECK_THROWS_AS(io::load_profile_csv(path, s, {}), ConfigError);
  io::write_file(path, "x,u\n0,0.2\n1,abc\n");
  CHECK_THROWS_AS(io::load_profile_csv(path, s, {}), ConfigError);
  io::write_file(path, "x,u\n1,0.2\n0,0.2\n2,0.1\n3,0.1\n");
  CHECK_THROWS_AS(io::load_profile_csv(path, s, {}), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_file(temp_path("ceshock_io_missing.csv")), ConfigError);
  CHECK_THROWS_AS(io::write_file("/nonexistent-dir/x.csv", "x"), ConfigError);
}

TEST_CASE("remainder table columns") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.1, -0.1, 1.0);
  const auto csv = io::remainder_csv(remainder_table(s, burgers, 2));
  // sup|R_1| = delta/2, sup|R_2| = delta^2/4, gamma = 0 at lambda = 0
  CHECK(csv == "n,sup_norm,normalized,gamma_factor,gamma_n_times_norm\n"
               "1,0.10000000000000001,0.5,0,0\n"
               "2,0.010000000000000002,0.125,0,0\n");
}

TEST_CASE("metadata keys come out in a fixed order") {
  const auto burgers = builtin_flux("burgers");
  const auto s = make_shock(burgers, 0.3, 0.1, 1.0);
  OdeSettings st;
  st.grid_dx = 1.0;
  const auto p = solve_first_order(s, burgers, ModelKind::relaxation, st);
  const auto j = io::profile_metadata(p, "burgers", resolve(st, s));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"model_tag", "flux", "shock", "settings", "points", "normalization_residual"});
  CHECK(j["shock"]["lambda"] == doctest::Approx(0.2));
}
