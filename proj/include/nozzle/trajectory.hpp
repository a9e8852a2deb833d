#pragma once

#include <string>
#include <vector>

#include "nozzle/region.hpp"

namespace nozzle {

struct Snapshot {
  double t = 0.0;
  double z_b = 0.0;
  double w_b = 0.0;
  std::vector<double> z;
  std::vector<double> w;
};

/// Stored space-time solution: grid description, snapshots and the configuration text that
/// produced it (so a trajectory file is self-describing).
class Trajectory {
 public:
  Problem problem = Problem::P1;
  std::size_t n = 0;
  double dx = 0.0;
  double x_interest = 0.0;
  double x_max = 0.0;
  std::size_t stride = 1;
  std::string config_text;
  std::vector<Snapshot> snapshots;

  double x(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx; }

  /// Binary format: "NOZZLETRAJ 1" header line, then little-endian fields.
  void save(const std::string& path) const;
  /// Throws IoError when the file is missing or malformed.
  static Trajectory load(const std::string& path);
};

}  // namespace nozzle
