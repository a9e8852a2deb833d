#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nozzle/certificate.hpp"
#include "nozzle/characteristics.hpp"
#include "nozzle/config.hpp"
#include "nozzle/solver.hpp"

namespace nozzle {

enum ExitCode : int {
  kExitOk = 0,
  kExitCertificate = 2,
  kExitMonitor = 3,
  kExitBlowUp = 4,
  kExitUsage = 64,
  kExitDataError = 65,
  kExitNoInput = 66,
};

struct CertBundle {
  std::vector<Certificate> parts;
  bool pass() const;
  bool conditional() const;
  std::string text() const;
};

/// H1, the region hypothesis, membership of the data, data conditions and compatibility.
CertBundle certify(const ScenarioConfig& config);

/// Residuals of the conservative equations at one interior time level.
struct ConservationNorms {
  double t = 0.0;
  double mass_linf = 0.0;
  double mass_l1 = 0.0;
  double momentum_linf = 0.0;
  double momentum_l1 = 0.0;
};

/// Centred space and time differences of rho_t + m_x + a m and m_t + (m^2/rho + p)_x + a m^2/rho
/// at the time level of `mid`, over cells 1 .. cells-2.
ConservationNorms conservation_residual(const Snapshot& prev, const Snapshot& mid,
                                        const Snapshot& next, double dx, std::size_t cells,
                                        const GasLaw& law, const NozzleProfile& profile);

/// Per-step norms over the reporting window. Throws ResolutionError unless stride is 1.
std::vector<ConservationNorms> conservative_residual(const Trajectory& trajectory,
                                                     const GasLaw& law,
                                                     const NozzleProfile& profile);

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;
  double margin_raw = 0.0;
  double margin_tol = 0.0;
  std::size_t margin_cell = 0;
  std::string margin_face;
  double min_gap = 0.0;
  double max_z_x = 0.0;
  double max_w_x = 0.0;
  double max_z_t = 0.0;
  double max_w_t = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double psi_min = 0.0;
  double psi_max = 0.0;
  double wall = 0.0;
};

struct MonitorReport {
  std::vector<StepRecord> steps;
  std::vector<ConservationNorms> conservation;
  double min_margin_raw = 0.0;
  double min_margin_adjusted = 0.0;
  double min_gap = 0.0;
  double gap_required = 0.0;
  double max_wall = 0.0;
  double max_z_x = 0.0;
  double max_w_x = 0.0;
  double max_z_t = 0.0;
  double max_w_t = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double psi_min = 0.0;
  double psi_max = 0.0;
  /// Largest |a-dependent offset| in Phi and Psi over the window.
  double phi_offset_max = 0.0;
  double psi_offset_max = 0.0;
  double mass_linf_max = 0.0;
  double momentum_linf_max = 0.0;
  bool containment_pass = true;
  bool gap_pass = true;
  bool wall_pass = true;
  std::vector<std::string> violations;

  bool pass() const { return containment_pass && gap_pass && wall_pass; }
};

/// Observer that fills a MonitorReport step by step.
class Monitor {
 public:
  Monitor(const Solver& solver, const ScenarioConfig& config);
  void observe(const Field& field, std::size_t step, double dt);
  const MonitorReport& report() const { return report_; }
  MonitorReport take() { return std::move(report_); }

 private:
  const Solver& solver_;
  const ScenarioConfig& config_;
  MonitorReport report_;
  std::vector<Snapshot> recent_;
  double C3_ = 0.0;
};

struct FamilySummary {
  int family = 1;
  std::size_t paths = 0;
  std::size_t residual_samples = 0;
  double residual_max = 0.0;
  double residual_l1 = 0.0;
  double residual_printed_max = 0.0;
  double lower_min = 0.0;
  double upper_min = 0.0;
  double subsolution_min = 0.0;
  double max_integral = 0.0;
  double max_tolerance = 0.0;
  bool lower_pass = true;
  bool upper_pass = true;
  bool subsolution_pass = true;
  std::vector<std::string> failures;
};

struct CharacteristicReport {
  FamilySummary phi;
  FamilySummary psi;
  /// Derivative bound implied by the Riccati comparison.
  double z_x_bound = 0.0;
  double w_x_bound = 0.0;
  double derivative_tolerance = 0.0;
  bool derivative_pass = true;
  std::vector<CharPath> paths;

  bool pass() const {
    return phi.lower_pass && phi.upper_pass && phi.subsolution_pass && psi.lower_pass &&
           psi.upper_pass && psi.subsolution_pass && derivative_pass;
  }
};

/// Fans of both families over a stored history, residuals, bound checks and the derivative bound.
/// `M` overrides the barrier parameter (the run itself is unchanged).
CharacteristicReport characteristic_pass(const History& history, const ScenarioConfig& config,
                                         const MonitorReport& monitors,
                                         std::optional<double> M = std::nullopt);

struct ScenarioOutcome {
  int exit_code = kExitOk;
  CertBundle certificate;
  bool overridden = false;
  std::optional<RunResult> run;
  MonitorReport monitors;
  std::optional<CharacteristicReport> characteristics;
  std::vector<std::string> messages;
};

struct RunOptions {
  std::optional<std::string> out_dir;
  std::string format = "json";
  bool write_files = true;
  bool characteristics = true;
};

/// certify -> run with monitors -> characteristic post-pass -> reports on disk.
ScenarioOutcome run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

std::string scheme_description(const SolverOptions& options);

/// Centred difference at cell i; one-sided against the x = 0 trace for i = 0 and at the last cell.
double cell_slope(const std::vector<double>& u, double u_b, std::size_t i, double dx);

}  // namespace nozzle
