#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nozzle/data.hpp"
#include "nozzle/model.hpp"
#include "nozzle/region.hpp"
#include "nozzle/trajectory.hpp"

namespace nozzle {

struct SolverOptions {
  std::size_t n = 2000;
  double x_interest = 2.0;
  double T = 5.0;
  /// Values above 1 are accepted so that unstable runs can be demonstrated.
  double cfl = 0.9;
  int order = 1;
  std::size_t snapshot_stride = 1;
  /// Truncation point; 0 selects x_interest + speed_max * T.
  double x_max = 0.0;
  double blowup_threshold = 1e100;
  /// Test hook: evolve w with the wrong sign of the source.
  bool mutate_w_source = false;
};

struct Scenario {
  Problem problem = Problem::P1;
  GasLaw law = GasLaw::from_ratio(5, 3);
  RegionSpec spec;
  InitialData initial;
  std::optional<BoundaryData> boundary;
  SolverOptions options;
};

/// Cell-centred grid x_i = (i + 1/2) dx on [0, x_max].
struct Grid {
  std::size_t n = 0;
  double dx = 0.0;
  double x_interest = 0.0;
  double x_max = 0.0;
  /// Number of cells whose centre lies in [0, x_interest].
  std::size_t window = 0;

  static Grid make(std::size_t n, double x_interest, double x_max);
  double x(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx; }
};

struct Field {
  double t = 0.0;
  std::vector<double> z;
  std::vector<double> w;
  /// Trace at x = 0 (reflected state for P1, boundary data for P2, extrapolation for P3).
  double z_b = 0.0;
  double w_b = 0.0;
};

/// dt = cfl dx / max |lambda|, clipped to land on t_end. Throws DomainError when every speed is 0.
double cfl_dt(const Field& field, const GasLaw& law, double cfl, double dx, double t_end);

/// Upwind evolution of the diagonal system on a truncated half line.
///
/// Each invariant is advected with its own speed in fluctuation form: face speeds are the mean of
/// the adjacent cell speeds, jumps at faces go to the downwind cell and (order 2) the minmod
/// reconstruction adds the in-cell term lambda_i * slope_i. Order 1 uses forward Euler, order 2
/// Heun. The source is evaluated once per cell and stage and enters z and w with opposite signs.
class Solver {
 public:
  explicit Solver(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const Grid& grid() const { return grid_; }
  double speed_bound() const { return speed_bound_; }
  const std::vector<double>& a_cells() const { return a_; }
  const std::vector<double>& s_cells() const { return s_; }

  Field initial_field() const;
  double cfl_dt(const Field& field) const;
  /// Advances the field by dt, filling ghost values before each stage. Throws BlowUpError.
  void step(Field& field, double dt) const;
  /// Sets field.z_b and field.w_b for the current field and time.
  void update_trace(Field& field) const;

 private:
  void fill_ghosts(std::vector<double>& Z, std::vector<double>& W, double t) const;
  void rhs(const std::vector<double>& Z, const std::vector<double>& W, std::vector<double>& dZ,
           std::vector<double>& dW) const;

  Scenario scenario_;
  Grid grid_;
  double speed_bound_ = 0.0;
  std::vector<double> a_;
  std::vector<double> s_;
  std::array<double, 4> right_z_{};
  std::array<double, 4> right_w_{};
};

struct BlowUpInfo {
  std::string message;
  std::size_t cell = 0;
  double x = 0.0;
  double t = 0.0;
};

/// Called after the initial field (step 0) and after every completed step.
using StepObserver = std::function<void(const Field&, std::size_t step, double dt)>;

struct RunResult {
  Trajectory trajectory;
  Field final_field;
  std::size_t steps = 0;
  std::optional<BlowUpInfo> blow_up;
};

/// Time loop {cfl_dt, boundary update, step, observe} until t = T, storing snapshots every
/// `snapshot_stride` steps plus the first and last. A blow-up ends the loop and is reported with
/// the partial trajectory.
RunResult run(const Solver& solver, const StepObserver& observer = {},
              const std::string& config_text = {});
RunResult run(const Scenario& scenario, const StepObserver& observer = {},
              const std::string& config_text = {});

}  // namespace nozzle
