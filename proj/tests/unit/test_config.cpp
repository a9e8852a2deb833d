#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "nozzle/config.hpp"
#include "nozzle/errors.hpp"

using namespace nozzle;

namespace {

std::string desk_text(const char* which) {
  std::ifstream in(std::string(NOZZLE_CONFIG_DIR) + "/desk_" + which + ".cfg");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text, const ConfigOverrides& overrides = {}) {
  try {
    parse_config(text, "t", overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("desk configurations load") {
  for (const char* which : {"p1", "p2", "p3"}) {
    const auto cfg = load_config(std::string(NOZZLE_CONFIG_DIR) + "/desk_" + which + ".cfg");
    CHECK(cfg.scenario.options.n == 2000);
    CHECK(cfg.scenario.spec.profile);
    CHECK(cfg.text == desk_text(which));
    CHECK(cfg.scenario.law.gamma() == 5.0 / 3.0);
  }
  const auto p2 = load_config(std::string(NOZZLE_CONFIG_DIR) + "/desk_p2.cfg");
  CHECK(p2.scenario.problem == Problem::P2);
  CHECK(p2.scenario.boundary.has_value());
  CHECK(p2.scenario.spec.c.U2 == 1.3);
  CHECK(p2.bounds.delta1 == 0.05);
}

TEST_CASE("errors carry the offending line") {
  const auto base = desk_text("p1");
  CHECK(error_of("[scenario]\nproblem = P1\nbogus = 3\n").find("line 3") == 0);
  CHECK(error_of("[scenario]\nproblem = P1\nbogus = 3\n").find("unknown key 'bogus'") !=
        std::string::npos);
  CHECK(error_of("[nowhere]\n").find("line 1: unknown section") == 0);
  CHECK(error_of("[scenario]\nproblem = P1\nproblem = P2\n").find("line 3: duplicate") == 0);
  CHECK(error_of("x = 1\n").find("outside of any section") != std::string::npos);
  CHECK(error_of("[scenario]\njunk\n").find("line 2") == 0);
  const std::string bad_order = base + "\n[monitors]\nfan = -2\n";
  CHECK_FALSE(error_of(bad_order).empty());
  CHECK(error_of(base, {"solver.order=3"}).find("order must be 1 or 2") != std::string::npos);
  CHECK(error_of(base, {"solver.n"}).find("section.key=value") != std::string::npos);
  CHECK(error_of(base, {"region.kind=r"}).find("does not match problem") != std::string::npos);
  CHECK(error_of(base, {"data.zB=1"}).find("missing required key 'wB'") != std::string::npos);
  CHECK(error_of(base, {"data.zB=1", "data.wB=1"}).find("only meaningful for P2") !=
        std::string::npos);
}

TEST_CASE("overrides, expressions and comments") {
  const auto base = desk_text("p1");
  const auto cfg = parse_config(base, "t", {"solver.n=500", "solver.T=2^-1", "profile.M=4*5"});
  CHECK(cfg.scenario.options.n == 500);
  CHECK(cfg.scenario.options.T == 0.5);
  CHECK(cfg.scenario.spec.profile->decay().M == 20.0);
  CHECK(error_of(base, {"solver.T=x+1"}).find("expected a constant") != std::string::npos);

  const auto added = parse_config(base, "t", {"monitors.fan=7"});
  CHECK(added.monitors.fan == 7);

  const auto commented = parse_config("; leading comment\n" + base + "\n# trailing\n");
  CHECK(commented.scenario.options.cfl == 0.9);
}

TEST_CASE("automatic region constants") {
  std::string text = desk_text("p3");
  const auto at = text.find("[region]");
  const auto next = text.find("\n[", at + 1);
  text = text.substr(0, at) + "[region]\nkind = l\nconstants = auto\n" + text.substr(next);
  const auto cfg = parse_config(text);
  REQUIRE(cfg.feasibility.has_value());
  CHECK(cfg.feasibility->feasible);
  CHECK(error_of(text, {"region.L1=1"}).find("given with constants = auto") != std::string::npos);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/dir/missing.cfg"), IoError);
}
