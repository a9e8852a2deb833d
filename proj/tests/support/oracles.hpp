#pragma once

// Reference computations that share no code with the library. Everything here is written from
// the formulas directly and kept deliberately naive.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

inline double f(double r, double gamma) {
  return 2.0 / (gamma - 1.0) * (gamma + 1.0 + (3.0 - gamma) * r) / std::abs(r * r - 1.0);
}

struct Constants {
  double l;
  double sigma1;
  double sigma2;
};

inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int k = 0; k < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++k) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Dense grid minimisation of f on (-1, 1) refined by golden section, then sign-change scans of
/// f - l outward from the poles followed by bisection.
inline Constants brute_force_constants(double gamma, int samples = 2'000'000) {
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  const double h = 2.0 / samples;
  for (int k = 1; k < samples; ++k) {
    const double v = f(-1.0 + k * h, gamma);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  double a = -1.0 + (best_k - 1) * h, b = -1.0 + (best_k + 1) * h;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int k = 0; k < 200; ++k) {
    if (f(c, gamma) < f(d, gamma))
      b = d;
    else
      a = c;
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  const double l = f(0.5 * (a + b), gamma);

  auto g = [&](double r) { return f(r, gamma) - l; };
  // f decreases away from each pole, so the first sign change going outward is the root.
  double r0 = -1.0 - 1e-9, r1 = r0;
  for (double step = 1e-6; g(r1) > 0; step *= 1.1) {
    r0 = r1;
    r1 -= step;
  }
  const double s1 = -bisect(g, r1, r0);
  r0 = 1.0 + 1e-9;
  r1 = r0;
  for (double step = 1e-6; g(r1) > 0; step *= 1.1) {
    r0 = r1;
    r1 += step;
  }
  const double s2 = bisect(g, r0, r1);
  return {l, s1, s2};
}

/// z = v - (2/(gamma-1)) rho^((gamma-1)/2), w = v + (2/(gamma-1)) rho^((gamma-1)/2).
inline void primitive_to_invariants(double rho, double v, double gamma, double& z, double& w) {
  const double c = 2.0 / (gamma - 1.0) * std::pow(rho, 0.5 * (gamma - 1.0));
  z = v - c;
  w = v + c;
}

inline void invariants_to_primitive(double z, double w, double gamma, double& rho, double& v) {
  v = 0.5 * (z + w);
  rho = std::pow((gamma - 1.0) / 4.0 * (w - z), 2.0 / (gamma - 1.0));
}

/// Phi and Psi transcribed from their defining formulas, both branches.
inline void phi_psi(double z, double w, double z_x, double w_x, double a, double gamma,
                    double& phi, double& psi) {
  const double d = w - z;
  if (gamma == 5.0 / 3.0) {
    phi = z_x / d - a * z / (2 * d) + 0.5 * a * std::log(d);
    psi = w_x / d - a * w / (2 * d) - 0.5 * a * std::log(d);
    return;
  }
  const double be = (gamma - 3.0) / (2.0 * (gamma - 1.0));
  const double p = std::pow(d, be), q = std::pow(d, be + 1);
  phi = p * z_x + a * z / (2 * be) * p + a / (2 * (be + 1)) * q;
  psi = p * w_x + a * w / (2 * be) * p - a / (2 * (be + 1)) * q;
}

}  // namespace oracle
