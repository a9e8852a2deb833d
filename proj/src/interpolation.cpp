#include "nozzle/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

void validate_nodes(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2 || x.size() != y.size()) {
    throw DomainError("interpolation needs at least two (x, y) pairs of equal count");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw DomainError("interpolation nodes must be strictly increasing");
  }
}

// Integral of the Hermite cubic over [0, s*h] of a segment of length h.
double segment_integral(double y0, double y1, double d0, double d1, double h, double s) {
  // Basis integrals of h00, h10, h01, h11 from 0 to s.
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double i00 = s - s3 + 0.5 * s4;
  const double i10 = 0.5 * s2 - (2.0 / 3.0) * s3 + 0.25 * s4;
  const double i01 = s3 - 0.5 * s4;
  const double i11 = -(1.0 / 3.0) * s3 + 0.25 * s4;
  return h * (y0 * i00 + h * d0 * i10 + y1 * i01 + h * d1 * i11);
}

}  // namespace

CubicHermite CubicHermite::with_slopes(std::vector<double> x, std::vector<double> y,
                                       std::vector<double> dy) {
  validate_nodes(x, y);
  if (dy.size() != x.size()) throw DomainError("slope count does not match node count");
  CubicHermite c;
  c.x_ = std::move(x);
  c.y_ = std::move(y);
  c.dy_ = std::move(dy);
  c.cumulative_.assign(c.x_.size(), 0.0);
  for (std::size_t i = 1; i < c.x_.size(); ++i) {
    const double h = c.x_[i] - c.x_[i - 1];
    c.cumulative_[i] = c.cumulative_[i - 1] +
                       segment_integral(c.y_[i - 1], c.y_[i], c.dy_[i - 1], c.dy_[i], h, 1.0);
  }
  return c;
}

CubicHermite CubicHermite::monotone(std::vector<double> x, std::vector<double> y) {
  validate_nodes(x, y);
  const std::size_t n = x.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  std::vector<double> d(n, 0.0);
  d.front() = secant.front();
  d.back() = secant.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = secant[i - 1];
    const double s1 = secant[i];
    if (s0 * s1 <= 0.0) {
      d[i] = 0.0;
    } else {
      // Weighted harmonic mean (Fritsch-Butland form used by PCHIP).
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      const double w0 = 2.0 * h1 + h0;
      const double w1 = h1 + 2.0 * h0;
      d[i] = (w0 + w1) / (w0 / s0 + w1 / s1);
    }
  }
  // End slopes limited so the first and last segments stay monotone.
  auto limit_end = [](double slope, double sec) {
    if (slope * sec <= 0.0) return 0.0;
    if (std::abs(slope) > 3.0 * std::abs(sec)) return 3.0 * sec;
    return slope;
  };
  if (n > 2) {
    d.front() = limit_end(d.front(), secant.front());
    d.back() = limit_end(d.back(), secant.back());
  }
  return with_slopes(std::move(x), std::move(y), std::move(d));
}

std::size_t CubicHermite::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  i -= 1;
  return std::min(i, x_.size() - 2);
}

double CubicHermite::value(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * dy_[i] +
         (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * dy_[i + 1];
}

double CubicHermite::slope(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y_[i] + (3 * s2 - 4 * s + 1) * h * dy_[i] +
          (-6 * s2 + 6 * s) * y_[i + 1] + (3 * s2 - 2 * s) * h * dy_[i + 1]) /
         h;
}

double CubicHermite::integral_to(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return cumulative_.back();
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  return cumulative_[i] + segment_integral(y_[i], y_[i + 1], dy_[i], dy_[i + 1], h, (x - x_[i]) / h);
}

}  // namespace nozzle
