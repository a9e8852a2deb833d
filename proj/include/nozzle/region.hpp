#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nozzle/certificate.hpp"
#include "nozzle/model.hpp"
#include "nozzle/profile.hpp"

namespace nozzle {

/// l = min of f on [-1, 1]; -sigma1 < -1 and sigma2 > 1 are the roots of f(r) = l.
struct CriticalConstants {
  double l;
  double sigma1;
  double sigma2;
};

/// f(r) = (2/(gamma-1)) (gamma+1+(3-gamma) r) / |r^2-1|. Throws PoleError at r = +-1.
double f_eval(double r, const GasLaw& law);

/// Closed-form interior minimizer for l, bisection to 1e-12 for sigma1 and sigma2.
CriticalConstants critical_constants(const GasLaw& law);

/// Subsonic (m), supersonic rightward (r) and supersonic leftward (l) invariant regions.
enum class RegionKind { m, r, l };
/// Initial-boundary problems, paired with region kinds P1-m, P2-r, P3-l.
enum class Problem { P1, P2, P3 };

const char* to_string(RegionKind kind);
const char* to_string(Problem problem);
RegionKind parse_region_kind(const std::string& text);
Problem parse_problem(const std::string& text);
RegionKind kind_for(Problem problem);

struct RegionConstants {
  double L1 = 1.0;
  double L2 = 1.0;
  double U1 = 1.0;
  double U2 = 1.0;
};

struct RegionSpec {
  RegionKind kind = RegionKind::m;
  RegionConstants c;
  std::shared_ptr<const NozzleProfile> profile;

  double I() const { return profile->I_total(); }
};

/// Face values of the rectangle at cumulative majorant integral s.
struct Envelope {
  double z_lo;
  double z_hi;
  double w_lo;
  double w_hi;
};
Envelope envelope(RegionKind kind, const RegionConstants& c, double s);

/// Signed distances to the four faces and to the vacuum face w = z; inside iff all >= 0.
struct MarginReport {
  double z_lo;
  double z_hi;
  double w_lo;
  double w_hi;
  double gap;

  bool inside() const { return min() >= 0.0; }
  double min() const;
  /// Name of the face with the smallest margin.
  const char* tightest() const;
};

MarginReport membership_at(RiemannState r, double s, RegionKind kind, const RegionConstants& c);
MarginReport membership(RiemannState r, double x, const RegionSpec& spec);

/// Integral of abar over [0, x].
double abar_cumulative(const NozzleProfile& profile, double x);

struct SpeedBounds {
  /// Positive lower bound on |lambda| of the family that moves away from x = 0 or toward it:
  /// m: lambda1 < -d1, r: lambda1 > d1, l: lambda2 < -d1.
  double d1;
  double C1;  ///< |z| <= C1
  double C2;  ///< |w| <= C2
  double C3;  ///< w - z >= C3
  double lambda_min;  ///< min lambda1 over the region
  double lambda_max;  ///< max lambda2 over the region
  double speed_max;   ///< max |lambda| over the region
};

/// Corner bounds over all s in [0, I]. Throws ContractError when d1 <= 0.
SpeedBounds region_speed_bounds(const RegionSpec& spec, const GasLaw& law);
SpeedBounds region_speed_bounds(RegionKind kind, const RegionConstants& c, double I,
                                const GasLaw& law);

struct HypothesisOptions {
  double strict_margin = kDefaultStrictMargin;
  double x_max = 64.0;
  std::size_t samples = 4001;
};

std::vector<double> sample_grid(double x_max, std::size_t samples);

Certificate check_H1(const NozzleProfile& profile, std::span<const double> x_grid);

/// The constant inequalities of the hypothesis matching `kind`, without the pointwise one.
Certificate check_constants(RegionKind kind, const RegionConstants& c, double I,
                            const GasLaw& law, const CriticalConstants& cc,
                            double strict_margin = kDefaultStrictMargin);

Certificate check_H2(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options = {});
Certificate check_H3(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options = {});
Certificate check_H4(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options = {});
/// Dispatches on spec.kind.
Certificate check_hypothesis(const RegionSpec& spec, const GasLaw& law,
                             const CriticalConstants& cc, const HypothesisOptions& options = {});

struct FeasibilityResult {
  bool feasible = false;
  RegionKind kind = RegionKind::m;
  RegionConstants constants;
  double min_slack = 0.0;
  std::size_t evaluations = 0;
  Certificate certificate;
  std::string report;
};

/// Searches U1 = 1 and log-spaced ratios (L1/U1, L2/L1, U2/U1) in [1/4, 4] for the point of
/// largest minimum slack, then refines it by a shrinking coordinate search.
FeasibilityResult find_constants(const GasLaw& law, double I, RegionKind kind,
                                 double strict_margin = kDefaultStrictMargin);

}  // namespace nozzle
