#include <cmath>
#include <limits>
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace advdiff::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("advdiff_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing with comments and dotted keys") {
  Config c = Config::parse("# header\n grid.n = 128  # trailing\n\nsimulate.norms=1, 2,inf\nflag = yes\n");
  CHECK(c.get_int("grid.n", 1, 1, 1000) == 128);
  const auto norms = c.get_list("simulate.norms", "2");
  REQUIRE(norms.size() == 3);
  CHECK(std::isinf(norms[2]));
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_double("absent.key", 0.25) == 0.25);
  CHECK(c.resolved().at("absent.key") == "0.25");
  CHECK_NOTHROW(c.check_unused());
}

TEST_CASE("config errors name the line") {
  CHECK_THROWS_WITH_AS(Config::parse("a = 1\nno equals sign\n", "f.cfg"), doctest::Contains("f.cfg:2"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse("a = 1\na = 2\n", "f.cfg"), doctest::Contains("f.cfg:1"), ConfigError);
  Config c = Config::parse("grid.n = twelve\n", "g.cfg");
  CHECK_THROWS_WITH_AS(c.get_int("grid.n", 1, 1, 10), doctest::Contains("g.cfg:1"), ConfigError);
  Config u = Config::parse("unused.key = 3\n", "h.cfg");
  CHECK_THROWS_WITH_AS(u.check_unused(), doctest::Contains("unused.key"), ConfigError);
  Config r = Config::parse("n = 50\n");
  CHECK_THROWS_AS(r.get_int("n", 1, 1, 10), ConfigError);
  Config ch = Config::parse("mode = sideways\n");
  CHECK_THROWS_AS(ch.get_choice("mode", "a", {"a", "b"}), ConfigError);
}

TEST_CASE("overrides replace file values and the hash follows resolved values") {
  Config a = Config::parse("x = 1\n");
  a.set("x", "2");
  CHECK(a.get_double("x", 0) == 2.0);
  Config b;
  b.get_double("x", 2.0);
  CHECK(a.hash() == b.hash());
  Config c;
  c.get_double("x", 3.0);
  CHECK(a.hash() != c.hash());
}

TEST_CASE("number parsing") {
  CHECK(*parse_number("inf") == std::numeric_limits<double>::infinity());
  CHECK(*parse_number(" 2.5 ") == 2.5);
  CHECK(*parse_number("1e-3") == 1e-3);
  CHECK_FALSE(parse_number("2.5x"));
  CHECK_FALSE(parse_number(""));
}

TEST_CASE("phase output is deterministic and flags the borderline pair") {
  const auto d1 = scratch("phase1"), d2 = scratch("phase2");
  for (const auto& d : {d1, d2}) {
    Config c = Config::parse("phase.d = 2\n");
    CHECK(cmd_phase(c, d) == kExitOk);
  }
  CHECK(slurp(d1 / "phase.csv") == slurp(d2 / "phase.csv"));
  CHECK(slurp(d1 / "phase.json") == slurp(d2 / "phase.json"));
  CHECK(slurp(d1 / "phase.csv").find("inf,2,2,1,Borderline") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d1 / "phase.json"));
  CHECK(j["schema_version"] == 1);
  CHECK(j["config"]["phase.r"] == "2,3,4,inf");
  for (const auto& row : j["rows"])
    if (row["sum"].get<double>() == 1.0) CHECK(row["regime"] != "BlowupPossible");
}

TEST_CASE("phase row (4,4,1) reports a Duhamel step") {
  const auto d = scratch("phase3");
  Config c = Config::parse("phase.d = 1\nphase.r = 4\nphase.q = 4\n");
  CHECK(cmd_phase(c, d) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(d / "phase.json"));
  CHECK(j["rows"][0]["sum"].get<double>() == doctest::Approx(0.75));
  CHECK(j["rows"][0]["flags"]["StrictDuhamel"] == true);
  CHECK(j["rows"][0]["witnesses"]["duhamel"]["beta"].get<double>() > 0.0);
}

TEST_CASE("profile output includes the junction drift value") {
  const auto d = scratch("profile1");
  Config c = Config::parse("profile.d = 1\n");
  CHECK(cmd_profile(c, d) == kExitOk);
  CHECK(slurp(d / "profile.csv").find("\n2,1.24495119851847") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "profile.json"));
  CHECK(j["max_residual_away"].get<double>() < 1e-6);
  CHECK(j["config"].contains("profile.h"));
}

TEST_CASE("profile in d = 3 echoes L and M") {
  const auto d = scratch("profile3");
  Config c = Config::parse("profile.d = 3\nprofile.n = 201\n");
  CHECK(cmd_profile(c, d) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(d / "profile.json"));
  CHECK(j["profile"]["M"].get<double>() == doctest::Approx(std::sqrt(6.0) + 1.0));
  CHECK(j["profile"]["L"].get<double>() > 0.0);
  CHECK(j["norm_integrals"]["sum"].get<double>() > 0.0);
}

TEST_CASE("duhamel with zero drift stays within the interpolation bound") {
  const auto d = scratch("duhamel0");
  Config c = Config::parse("duhamel.drift = zero\n");
  CHECK(cmd_duhamel(c, d) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(d / "duhamel.json"));
  CHECK(j["sup_norm_over_interpolation_bound"]["Linf"].get<double>() <= 1.0);
  CHECK(j["max_l1_over_initial"].get<double>() <= 1.0 + 1e-12);
}

TEST_CASE("duhamel rejects a supercritical pair") {
  Config c = Config::parse("duhamel.r = 2\nduhamel.q = 2\n");
  CHECK_THROWS(cmd_duhamel(c, scratch("duhamel1")));
}

TEST_CASE("heat-only simulate run has decreasing Linf") {
  const auto d = scratch("sim0");
  Config c = Config::parse("simulate.family = zero\nsimulate.t_end = 0.5\ngrid.n = 801\nsimulate.snapshot = true\n");
  CHECK(cmd_simulate(c, d) == kExitOk);
  std::istringstream csv(slurp(d / "simulate.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,L1,L2,Linf,mass");
  double prev = 1e300;
  while (std::getline(csv, line)) {
    const double linf = std::stod(line.substr(line.find(',', line.find(',', line.find(',') + 1) + 1) + 1));
    CHECK(linf < prev);
    prev = linf;
  }
  CHECK(fs::exists(d / "simulate_snapshot.csv"));
}

TEST_CASE("unknown keys are rejected before running") {
  Config c = Config::parse("simulate.family = zero\nsimulate.typo = 1\n");
  CHECK_THROWS_AS(cmd_simulate(c, scratch("sim1")), ConfigError);
}

TEST_CASE("verify runs a single criterion and reports tightened tolerances as failures") {
  Config ok = Config::parse("verify.only = A7\n");
  CHECK(cmd_verify(ok, scratch("verify1")) == kExitOk);
  Config tight = Config::parse("verify.only = A2\nverify.tolerance.A2 = 1e-300\n");
  const auto d = scratch("verify2");
  CHECK(cmd_verify(tight, d) == kExitAcceptance);
  const auto j = nlohmann::json::parse(slurp(d / "verify.json"));
  CHECK(j["passed"] == false);
  CHECK(j["criteria"][0]["id"] == "A2");
}
