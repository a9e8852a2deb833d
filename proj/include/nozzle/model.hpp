#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace nozzle {

/// States with w - z below this are treated as vacuum.
inline constexpr double kVacuumGap = 1e-12;

/// Barotropic gas law p = rho^gamma / gamma with gamma in (1, 5/3].
///
/// theta = (gamma-1)/2 and beta = (gamma-3)/(2(gamma-1)). The value gamma = 5/3 selects the
/// logarithmic branch of the derivative functionals (beta = -1). That branch is chosen only on
/// exact equality, so "5/3" should be written as a ratio in configuration text.
class GasLaw {
 public:
  /// Throws DomainError outside (1, 5/3].
  static GasLaw from_gamma(double gamma);
  /// gamma = num/den evaluated exactly for the branch decision.
  static GasLaw from_ratio(long num, long den);
  /// Accepts "1.4", "5/3", "7/5".
  static GasLaw parse(std::string_view text);

  double gamma() const { return gamma_; }
  double theta() const { return theta_; }
  double beta() const { return beta_; }
  bool is_log_branch() const { return log_branch_; }

  /// Set when gamma is within 1e-6 of 5/3 without being equal to it.
  const std::optional<std::string>& warning() const { return warning_; }

 private:
  GasLaw(double gamma, double theta, double beta, bool log_branch);
  double gamma_;
  double theta_;
  double beta_;
  bool log_branch_;
  std::optional<std::string> warning_;
};

struct GasState {
  double rho = 0.0;
  double m = 0.0;
  double v = 0.0;
  bool vacuum = false;

  static GasState from_density_velocity(double rho, double v);
  static GasState from_density_momentum(double rho, double m);
};

struct RiemannState {
  double z = 0.0;
  double w = 0.0;

  double gap() const { return w - z; }
};

struct CharSpeeds {
  double lambda1;
  double lambda2;
};

struct SourceRates {
  double dz_dt;
  double dw_dt;
};

double pressure(double rho, const GasLaw& law);

/// z = v - rho^theta/theta, w = v + rho^theta/theta. Throws VacuumError for rho = 0.
RiemannState to_riemann(const GasState& state, const GasLaw& law);

/// v = (w+z)/2, rho = (theta (w-z)/2)^(1/theta). Throws InvalidStateError for w < z.
GasState from_riemann(RiemannState r, const GasLaw& law);

/// lambda_{1,2} = v -+ rho^theta, written directly in (z, w).
CharSpeeds char_speeds(RiemannState r, const GasLaw& law);

/// Same as char_speeds without the w >= z guard (used on ghost and trial states).
CharSpeeds char_speeds_unchecked(RiemannState r, const GasLaw& law);

/// Source of the diagonal system: dz = (gamma-1)/8 a (w^2 - z^2), dw = -dz.
SourceRates source_rhs(RiemannState r, double a, const GasLaw& law);

}  // namespace nozzle
