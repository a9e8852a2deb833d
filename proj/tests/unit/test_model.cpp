#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nozzle/errors.hpp"
#include "nozzle/model.hpp"
#include "oracles.hpp"

using namespace nozzle;

TEST_CASE("gas law exponents and branch selection") {
  const auto mono = GasLaw::parse("5/3");
  CHECK(mono.is_log_branch());
  CHECK(mono.beta() == -1.0);
  CHECK(mono.theta() == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(mono.warning());

  const auto air = GasLaw::parse("1.4");
  CHECK_FALSE(air.is_log_branch());
  CHECK(air.theta() == doctest::Approx(0.2));
  CHECK(air.beta() == doctest::Approx(-2.0));
  CHECK(GasLaw::parse("7/5").beta() == doctest::Approx(-2.0));

  CHECK(GasLaw::from_gamma(5.0 / 3.0).is_log_branch());
  const auto near = GasLaw::from_gamma(5.0 / 3.0 - 1e-8);
  CHECK_FALSE(near.is_log_branch());
  CHECK(near.warning());

  CHECK_THROWS_AS(GasLaw::parse("2"), DomainError);
  CHECK_THROWS_AS(GasLaw::parse("1"), DomainError);
  CHECK_THROWS_AS(GasLaw::parse("5/2"), DomainError);
  CHECK_THROWS_AS(GasLaw::parse("abc"), DomainError);
  CHECK_THROWS_AS(GasLaw::parse("3/"), DomainError);
}

TEST_CASE("pressure") {
  const auto mono = GasLaw::parse("5/3");
  CHECK(pressure(0.0, mono) == 0.0);
  CHECK(pressure(1.0, mono) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(pressure(2.0, GasLaw::parse("1.4")) == doctest::Approx(1.8850113011041347).epsilon(1e-12));
  CHECK_THROWS_AS(pressure(-1.0, mono), DomainError);
}

TEST_CASE("Riemann invariants of primitive states") {
  const auto mono = GasLaw::parse("5/3");
  auto r = to_riemann(GasState::from_density_velocity(1.0, 0.0), mono);
  CHECK(r.z == doctest::Approx(-3.0));
  CHECK(r.w == doctest::Approx(3.0));
  r = to_riemann(GasState::from_density_velocity(1.0, 2.0), mono);
  CHECK(r.z == doctest::Approx(-1.0));
  CHECK(r.w == doctest::Approx(5.0));

  const auto air = GasLaw::parse("1.4");
  r = to_riemann(GasState::from_density_velocity(0.8, -1.0), air);
  CHECK(r.z == doctest::Approx(-1.0 - std::pow(0.8, 0.2) / 0.2).epsilon(1e-14));
  CHECK(r.w == doctest::Approx(-1.0 + std::pow(0.8, 0.2) / 0.2).epsilon(1e-14));
  const auto back = from_riemann(r, air);
  CHECK(back.rho == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(back.v == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(to_riemann(GasState::from_density_velocity(0.0, 1.0), mono), VacuumError);
}

TEST_CASE("primitive states of Riemann invariants") {
  const auto mono = GasLaw::parse("5/3");
  auto s = from_riemann({-3.0, 3.0}, mono);
  CHECK(s.rho == doctest::Approx(1.0));
  CHECK(s.v == 0.0);
  CHECK_FALSE(s.vacuum);

  s = from_riemann({0.0, 0.0}, mono);
  CHECK(s.vacuum);
  CHECK(s.rho == 0.0);
  CHECK(s.v == 0.0);
  CHECK(s.m == 0.0);

  s = from_riemann({1.0, 2.0}, mono);
  CHECK(s.v == doctest::Approx(1.5));
  CHECK(s.rho == doctest::Approx(1.0 / 216.0).epsilon(1e-14));

  CHECK_THROWS_AS(from_riemann({2.0, 1.0}, mono), InvalidStateError);
}

TEST_CASE("characteristic speeds") {
  const auto mono = GasLaw::parse("5/3");
  auto l = char_speeds({-3.0, 3.0}, mono);
  CHECK(l.lambda1 == doctest::Approx(-1.0));
  CHECK(l.lambda2 == doctest::Approx(1.0));
  l = char_speeds({0.7, 0.7}, mono);
  CHECK(l.lambda1 == 0.7);
  CHECK(l.lambda2 == 0.7);
  l = char_speeds({1.0, 2.0}, mono);
  CHECK(l.lambda1 == doctest::Approx(4.0 / 3.0));
  CHECK(l.lambda2 == doctest::Approx(5.0 / 3.0));
  CHECK_THROWS_AS(char_speeds({1.0, 0.0}, mono), InvalidStateError);
}

TEST_CASE("source of the diagonal system") {
  const auto mono = GasLaw::parse("5/3");
  auto s = source_rhs({1.0, 2.0}, 0.0, mono);
  CHECK(s.dz_dt == 0.0);
  CHECK(s.dw_dt == 0.0);
  s = source_rhs({-3.0, 3.0}, 0.7, mono);
  CHECK(s.dz_dt == 0.0);
  s = source_rhs({1.0, 2.0}, 0.1, mono);
  CHECK(s.dz_dt == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(s.dw_dt == doctest::Approx(-0.025).epsilon(1e-14));
}

TEST_CASE("random states: round trip, ordering, antisymmetry, rho^theta identity") {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> lrho(std::log(1e-6), std::log(1e3));
  std::uniform_real_distribution<double> vel(-5.0, 5.0);
  std::uniform_real_distribution<double> gam(1.0 + 1e-3, 5.0 / 3.0);
  for (int k = 0; k < 2000; ++k) {
    const auto law = k % 4 == 0 ? GasLaw::parse("5/3") : GasLaw::from_gamma(gam(rng));
    const double rho = std::exp(lrho(rng));
    const double v = vel(rng);
    const auto r = to_riemann(GasState::from_density_velocity(rho, v), law);
    double z, w;
    oracle::primitive_to_invariants(rho, v, law.gamma(), z, w);
    REQUIRE(r.z == doctest::Approx(z).epsilon(1e-12));
    REQUIRE(r.w == doctest::Approx(w).epsilon(1e-12));
    const auto back = from_riemann(r, law);
    REQUIRE(std::abs(back.rho - rho) <= 1e-12 * rho);
    REQUIRE(std::abs(back.v - v) <= 1e-12 * std::max(1.0, std::abs(v)) + 1e-12 * std::abs(r.w));
    const auto sp = char_speeds(r, law);
    REQUIRE(sp.lambda1 < sp.lambda2);
    REQUIRE(0.5 * law.theta() * (r.w - r.z) ==
            doctest::Approx(std::pow(rho, law.theta())).epsilon(1e-12));
    const auto src = source_rhs(r, vel(rng), law);
    REQUIRE(src.dz_dt + src.dw_dt == 0.0);
  }
}
