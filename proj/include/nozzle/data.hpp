#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nozzle/expression.hpp"
#include "nozzle/model.hpp"

namespace nozzle {

/// Initial data z0(x), w0(x) with their x-derivatives.
class InitialData {
 public:
  struct Sample {
    double z;
    double w;
    double z_x;
    double w_x;
  };

  InitialData();
  static InitialData riemann(Expression z0, Expression w0);
  /// rho0(x) > 0 and v0(x) converted pointwise to Riemann invariants.
  static InitialData primitive(Expression rho0, Expression v0, const GasLaw& law);
  /// Monotone cubic interpolation through tabulated (x, z, w).
  static InitialData table(std::vector<double> x, std::vector<double> z, std::vector<double> w);

  Sample at(double x) const { return eval_(x); }
  const std::string& describe() const { return description_; }

 private:
  std::function<Sample(double)> eval_;
  std::string description_;
};

/// Boundary data z_B(t), w_B(t) at x = 0 with their t-derivatives.
class BoundaryData {
 public:
  struct Sample {
    double z;
    double w;
    double z_t;
    double w_t;
  };

  BoundaryData() = default;
  BoundaryData(Expression zB, Expression wB);

  Sample at(double t) const;
  std::string describe() const;

 private:
  Expression zB_;
  Expression wB_;
};

}  // namespace nozzle
