#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nozzle/interpolation.hpp"

namespace nozzle {

enum class ProfileFamily { Zero, Power, Exponential, Oscillating, Table };

const char* to_string(ProfileFamily family);
ProfileFamily parse_profile_family(const std::string& text);

/// Decay constants of the pointwise bounds a^2 <= k1 (1+Mx)^(-2-alpha), |a'| <= k2 (1+Mx)^(-2-alpha).
struct DecayConstants {
  double k1 = 1.0;
  double k2 = 1.0;
  double alpha = 1.0;
  double M = 1.0;
};

/// Parameters of a nozzle coefficient a(x) = A'(x)/A(x).
///
/// Built-in families (with s = 1 + rate x):
///   zero         a = 0,                               abar = eps e^(-x)
///   power        a = amp s^(-p),                      abar = margin |amp| / l s^(-p)
///   exponential  a = amp e^(-rate x),                 abar = margin |amp| / l e^(-rate x)
///   oscillating  a = amp sin(freq x) s^(-p),          abar = margin |amp| / l s^(-p)
///   table        a = monotone cubic through (x_i, a_i), abar = smoothed envelope of |a|/l
struct ProfileParams {
  ProfileFamily family = ProfileFamily::Zero;
  double amp = 0.0;
  double rate = 1.0;
  double power = 2.0;
  double freq = 1.0;
  double margin = 1.05;
  double eps = 1e-3;
  std::vector<double> table_x;
  std::vector<double> table_a;
  int envelope_window = 1;
  std::optional<double> tail_bound;
  DecayConstants decay;
};

/// Nozzle coefficient, its derivative, the majorant abar and the cached cumulative integral of abar.
///
/// The cumulative table is built once at construction over [0, cache_length] and is read-only
/// afterwards, so a profile can be shared between threads.
class NozzleProfile {
 public:
  /// `l` is the critical constant of the gas law (the majorant is scaled by 1/l).
  NozzleProfile(ProfileParams params, double l, double cache_length = 64.0);

  double a(double x) const;
  double a_prime(double x) const;
  double abar(double x) const;

  /// Integral of abar over [0, infinity). Analytic for built-in families, table integral plus the
  /// user tail bound for tables.
  double I_total() const { return I_total_; }
  /// True when I_total rests on an unverified tail (table without a tail bound, or p <= 1).
  bool conditional() const { return conditional_; }

  /// Integral of abar over [0, x]; nondecreasing and capped at I_total. Throws DomainError for x < 0.
  double cum_abar(double x) const;
  /// Richardson estimate of the cached quadrature error.
  double quadrature_error() const { return quad_error_; }
  double quadrature_step() const { return h_; }

  const ProfileParams& params() const { return params_; }
  const DecayConstants& decay() const { return params_.decay; }
  ProfileFamily family() const { return params_.family; }
  std::string describe() const;

  /// Copy with different decay constants (the cached table is shared).
  NozzleProfile with_decay(const DecayConstants& decay) const;

 private:
  void build_table_family(double l);
  void build_cache(double cache_length);
  double integrate_abar(double x0, double x1) const;

  ProfileParams params_;
  double abar_scale_ = 0.0;
  double I_total_ = 0.0;
  bool conditional_ = false;
  CubicHermite table_a_;
  CubicHermite table_abar_;

  struct Cache {
    double h = 0.0;
    std::vector<double> cumulative;
  };
  std::shared_ptr<const Cache> cache_;
  double h_ = 0.0;
  double quad_error_ = 0.0;
};

}  // namespace nozzle
