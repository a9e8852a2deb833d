#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nozzle/model.hpp"
#include "nozzle/profile.hpp"
#include "nozzle/region.hpp"
#include "nozzle/trajectory.hpp"

namespace nozzle {

/// Read-only interpolating view of a stored trajectory.
///
/// Nodes are x = 0 (the boundary trace) followed by the cell centres; values and nodal centred
/// differences are interpolated bilinearly in (x, t).
class History {
 public:
  struct Point {
    double z;
    double w;
    double z_x;
    double w_x;
  };

  /// Throws ResolutionError when the trajectory has fewer than 2 snapshots or a stride above 10.
  History(const Trajectory& trajectory, const GasLaw& law,
          std::shared_ptr<const NozzleProfile> profile);

  Point at(double x, double t) const;
  CharSpeeds speeds(double x, double t) const;

  const Trajectory& trajectory() const { return traj_; }
  const GasLaw& law() const { return law_; }
  const NozzleProfile& profile() const { return *profile_; }
  double t_end() const { return traj_.snapshots.back().t; }
  double x_max() const { return traj_.x_max; }
  double dx() const { return traj_.dx; }
  /// Largest leftward speed in the stored solution; states right of x_max - speed*t can have
  /// felt the truncation.
  double inflow_speed() const { return inflow_speed_; }
  bool determined(double x, double t) const;

 private:
  double node_x(std::size_t j) const;
  double node_value(const Snapshot& s, const std::vector<double>& u, double ub,
                    std::size_t j) const;
  double node_slope(const Snapshot& s, const std::vector<double>& u, double ub,
                    std::size_t j) const;
  std::size_t locate_t(double t) const;
  std::size_t locate_x(double x) const;

  const Trajectory& traj_;
  GasLaw law_;
  std::shared_ptr<const NozzleProfile> profile_;
  double inflow_speed_ = 0.0;
};

struct PathSample {
  double t;
  double x;
  double z;
  double w;
  double z_x;
  double w_x;
  double lambda;
  double a;
  double a_x;
  /// Phi for family 1, Psi for family 2.
  double F;
  /// The other functional (Psi for family 1, Phi for family 2).
  double G;
  double A;
  double B;
  double C;
};

struct CharPath {
  int family = 1;
  double x0 = 0.0;
  double t0 = 0.0;
  std::vector<PathSample> samples;
  /// F at the launch point computed from the exact data (initial or boundary), when known.
  std::optional<double> launch_exact;
  /// "window end", "left boundary", "right boundary", "truncation cone" or "vacuum".
  std::string exit_reason;
  double exit_t = 0.0;
  double exit_x = 0.0;
};

/// RK4 in t with one step per snapshot interval, starting at (x0, t0).
/// Throws DomainError when x0 lies outside [0, x_max] or t0 outside the stored time range.
CharPath trace(const History& history, double x0, int family, double t0 = 0.0);

struct ResidualSeries {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> residual;
  /// Residual under the printed reading with B_hat multiplying Phi (family 2 only; else empty).
  std::vector<double> residual_printed;
  double max_abs = 0.0;
  double max_abs_printed = 0.0;
  /// Trapezoid integral of |residual| in time.
  double l1 = 0.0;
};

/// Centred difference of F along the path minus A F^2 + B F + C at interior samples whose
/// difference stencil stays 1.5 dx away from both ends of the grid.
ResidualSeries riccati_residual(const CharPath& path, double dx = 0.0, double x_max = 0.0);

struct MarginMin {
  double value = 0.0;
  double t = 0.0;
  double x = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct BoundReport {
  MarginMin lower;       ///< F - barrier, tolerance 5 x scheme error estimate
  MarginMin upper;       ///< upper bound - F, same tolerance
  MarginMin subsolution; ///< -(d barrier/dt - A b^2 - B b - C), no tolerance
  /// Max over the path of the integral of C - B^2/(4A) from the launch time.
  double max_integral = 0.0;
  /// Set when some A >= 0 made the upper bound undefined.
  std::optional<std::string> contract_failure;
  bool pass() const { return lower.pass && upper.pass && subsolution.pass && !contract_failure; }
};

/// Scheme error estimate at sample k: launch defect |F(launch) - launch_exact| plus the running time
/// integral of |residual|; the tolerance is 5 times that plus `floor`.
BoundReport bound_check(const CharPath& path, Problem problem, double delta1, double M,
                        double alpha, const ResidualSeries* residual = nullptr,
                        double floor = 1e-6);

struct FanOptions {
  std::size_t count = 20;
  bool include_boundary = false;
};

/// Launch points x0 = (k + 1/2) x_interest / count at t = 0 for the given family; with
/// include_boundary also t0 = (k + 1/2) T / count at x = 0.
std::vector<CharPath> fan(const History& history, int family, const FanOptions& options);

}  // namespace nozzle
