#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nozzle/characteristics.hpp"
#include "nozzle/config.hpp"

namespace nozzle {

struct CertBundle;
struct MonitorReport;
struct ScenarioOutcome;

/// Column order of the solution CSV.
inline constexpr const char* kSolutionCsvHeader =
    "t,x,rho,v,z,w,z_x,w_x,Phi,Psi,margin_z_lo,margin_z_hi,margin_w_lo,margin_w_hi,gap,lambda1,"
    "lambda2";

/// 17 significant digits.
std::string format_double(double v);

/// One row per reporting-window cell for every `every`-th stored snapshot and the last one.
void write_solution_csv(std::ostream& os, const Trajectory& trajectory, const ScenarioConfig& config,
                        std::size_t every);
void write_monitor_csv(std::ostream& os, const MonitorReport& report);
void write_paths_csv(std::ostream& os, const std::vector<CharPath>& paths);

std::string certificate_json(const CertBundle& bundle);
std::string outcome_json(const ScenarioOutcome& outcome, const ScenarioConfig& config);

}  // namespace nozzle
