#pragma once

#include <span>
#include <vector>

namespace nozzle {

/// Piecewise cubic Hermite interpolant on strictly increasing nodes.
///
/// `monotone()` builds the Fritsch-Carlson slopes (no overshoot between nodes). `with_slopes()`
/// uses caller-supplied node derivatives. Outside the node range the end values are held
/// constant with zero slope.
class CubicHermite {
 public:
  CubicHermite() = default;
  static CubicHermite monotone(std::vector<double> x, std::vector<double> y);
  static CubicHermite with_slopes(std::vector<double> x, std::vector<double> y,
                                  std::vector<double> dy);

  double value(double x) const;
  double slope(double x) const;
  /// Exact integral of the interpolant over [x_front, x] (x clipped to the node range).
  double integral_to(double x) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }
  std::span<const double> nodes() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::size_t segment(double x) const;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> dy_;
  std::vector<double> cumulative_;  // integral from x_front to each node
};

}  // namespace nozzle
