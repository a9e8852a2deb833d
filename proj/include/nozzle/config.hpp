#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nozzle/riccati.hpp"
#include "nozzle/solver.hpp"

namespace nozzle {

struct MonitorOptions {
  /// Containment tolerance is lip_factor * dx * (Lipschitz estimate of the field).
  double lip_factor = 5.0;
  std::size_t fan = 20;
  /// P2 only: also launch characteristics from x = 0.
  bool boundary_launches = true;
  double residual_floor = 1e-6;
  double strict_margin = kDefaultStrictMargin;
  double hypothesis_x_max = 64.0;
  std::size_t hypothesis_samples = 4001;
  double compatibility_tol = 1e-8;
  std::size_t data_samples = 2001;
  /// Run even when certification fails (recorded in the report).
  bool override_certificate = false;
};

struct OutputOptions {
  std::string dir = "out";
  bool save_trajectory = true;
  /// Write a CSV row block every this many stored snapshots.
  std::size_t csv_every = 50;
};

/// Fully built scenario plus the knobs that do not belong to the solver.
struct ScenarioConfig {
  std::string name;
  std::string text;
  Scenario scenario;
  DataBounds bounds{};
  MonitorOptions monitors;
  OutputOptions output;
  std::uint64_t seed = 0;
  /// Set when region constants were "auto".
  std::optional<FeasibilityResult> feasibility;
};

/// "section.key=value" replacements applied before interpretation.
using ConfigOverrides = std::vector<std::string>;

/// Line-oriented `[section]` / `key = value` text; `#` and `;` start comments. Unknown sections
/// or keys, duplicates and malformed values raise ConfigError with the offending line.
ScenarioConfig parse_config(const std::string& text, const std::string& name = "config",
                            const ConfigOverrides& overrides = {});

/// Throws IoError when the file cannot be opened.
ScenarioConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace nozzle
