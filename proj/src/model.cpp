#include "nozzle/model.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

constexpr double kFiveThirds = 5.0 / 3.0;

void check_gamma_range(double gamma, std::string_view text) {
  if (!(gamma > 1.0) || !(gamma <= kFiveThirds)) {
    throw DomainError("adiabatic exponent " + std::string(text) + " outside (1, 5/3]");
  }
}

}  // namespace

GasLaw::GasLaw(double gamma, double theta, double beta, bool log_branch)
    : gamma_(gamma), theta_(theta), beta_(beta), log_branch_(log_branch) {}

GasLaw GasLaw::from_gamma(double gamma) {
  check_gamma_range(gamma, std::to_string(gamma));
  const bool log_branch = gamma == kFiveThirds;
  if (log_branch) return GasLaw(gamma, 1.0 / 3.0, -1.0, true);
  GasLaw law(gamma, 0.5 * (gamma - 1.0), (gamma - 3.0) / (2.0 * (gamma - 1.0)), false);
  if (std::abs(gamma - kFiveThirds) < 1e-6) {
    law.warning_ = "gamma=" + std::to_string(gamma) +
                   " is within 1e-6 of 5/3 but not equal; the beta != -1 coefficients are "
                   "ill-conditioned there (write 5/3 to select the logarithmic branch)";
  }
  return law;
}

GasLaw GasLaw::from_ratio(long num, long den) {
  if (den == 0) throw DomainError("adiabatic exponent with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  // 1 < num/den <= 5/3 decided in integers.
  if (!(num > den) || !(3 * num <= 5 * den)) {
    throw DomainError("adiabatic exponent " + std::to_string(num) + "/" + std::to_string(den) +
                      " outside (1, 5/3]");
  }
  if (3 * num == 5 * den) return GasLaw(kFiveThirds, 1.0 / 3.0, -1.0, true);
  const double gamma = static_cast<double>(num) / static_cast<double>(den);
  const double theta = static_cast<double>(num - den) / static_cast<double>(2 * den);
  const double beta = static_cast<double>(num - 3 * den) / static_cast<double>(2 * (num - den));
  return GasLaw(gamma, theta, beta, false);
}

GasLaw GasLaw::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    char* end = nullptr;
    const std::string num_text = s.substr(0, slash);
    const std::string den_text = s.substr(slash + 1);
    const long num = std::strtol(num_text.c_str(), &end, 10);
    if (num_text.empty() || *end != '\0') throw DomainError("malformed ratio '" + s + "'");
    const long den = std::strtol(den_text.c_str(), &end, 10);
    if (den_text.empty() || *end != '\0') throw DomainError("malformed ratio '" + s + "'");
    return from_ratio(num, den);
  }
  char* end = nullptr;
  const double gamma = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw DomainError("malformed adiabatic exponent '" + s + "'");
  return from_gamma(gamma);
}

GasState GasState::from_density_velocity(double rho, double v) {
  if (rho < 0.0) throw DomainError("negative density");
  return GasState{rho, rho * v, v, rho == 0.0};
}

GasState GasState::from_density_momentum(double rho, double m) {
  if (rho < 0.0) throw DomainError("negative density");
  if (rho == 0.0) return GasState{0.0, m, 0.0, true};
  return GasState{rho, m, m / rho, false};
}

double pressure(double rho, const GasLaw& law) {
  if (rho < 0.0) throw DomainError("pressure of negative density");
  return std::pow(rho, law.gamma()) / law.gamma();
}

RiemannState to_riemann(const GasState& state, const GasLaw& law) {
  if (state.rho < 0.0) throw DomainError("negative density");
  if (state.rho == 0.0 || state.vacuum) {
    throw VacuumError("Riemann invariants are degenerate at vacuum");
  }
  const double c = std::pow(state.rho, law.theta()) / law.theta();
  const RiemannState r{state.v - c, state.v + c};
  if (r.w - r.z < kVacuumGap) throw VacuumError("density below the vacuum threshold");
  return r;
}

GasState from_riemann(RiemannState r, const GasLaw& law) {
  const double gap = r.w - r.z;
  if (gap < 0.0) throw InvalidStateError("Riemann state with w < z");
  const double v = 0.5 * (r.w + r.z);
  if (gap < kVacuumGap) return GasState{0.0, 0.0, v, true};
  const double rho = std::pow(0.5 * law.theta() * gap, 1.0 / law.theta());
  return GasState{rho, rho * v, v, false};
}

CharSpeeds char_speeds_unchecked(RiemannState r, const GasLaw& law) {
  const double v = 0.5 * (r.w + r.z);
  const double c = 0.5 * law.theta() * (r.w - r.z);
  return {v - c, v + c};
}

CharSpeeds char_speeds(RiemannState r, const GasLaw& law) {
  if (r.w < r.z) throw InvalidStateError("characteristic speeds of a state with w < z");
  return char_speeds_unchecked(r, law);
}

SourceRates source_rhs(RiemannState r, double a, const GasLaw& law) {
  const double dz = 0.125 * (law.gamma() - 1.0) * a * (r.w * r.w - r.z * r.z);
  return {dz, -dz};
}

}  // namespace nozzle
