#include "nozzle/riccati.hpp"

#include <cmath>
#include <cstdio>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

double checked_gap(RiemannState r) {
  const double g = r.w - r.z;
  if (!(g >= kVacuumGap)) throw VacuumError("derivative functional at or below the vacuum gap");
  return g;
}

std::string at_x(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "x=%.6g", x);
  return buf;
}

std::string at_t(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t=%.6g", t);
  return buf;
}

}  // namespace

FunctionalParts functional_parts(RiemannState r, double a, const GasLaw& law) {
  const double g = checked_gap(r);
  if (law.is_log_branch()) {
    const double L = std::log(g);
    return {1.0 / g, -a * r.z / (2.0 * g) + 0.5 * a * L, -a * r.w / (2.0 * g) - 0.5 * a * L};
  }
  const double b = law.beta();
  const double gb = std::pow(g, b);
  const double tail = a / (2.0 * (b + 1.0)) * gb * g;
  return {gb, a * r.z / (2.0 * b) * gb + tail, a * r.w / (2.0 * b) * gb - tail};
}

PhiPsi phi_psi(RiemannState r, double z_x, double w_x, double a, const GasLaw& law) {
  const FunctionalParts p = functional_parts(r, a, law);
  return {p.scale * z_x + p.phi_offset, p.scale * w_x + p.psi_offset};
}

PhiPsi phi_psi_boundary(RiemannState r, double z_t, double w_t, double a, const GasLaw& law) {
  const FunctionalParts p = functional_parts(r, a, law);
  const CharSpeeds s = char_speeds(r, law);
  if (s.lambda1 == 0.0 || s.lambda2 == 0.0) {
    throw PoleError("boundary functional at a sonic state");
  }
  const double S = 0.125 * (law.gamma() - 1.0) * a * (r.w * r.w - r.z * r.z);
  return {-p.scale * (z_t - S) / s.lambda1 + p.phi_offset,
          -p.scale * (w_t + S) / s.lambda2 + p.psi_offset};
}

double z_x_for_phi(RiemannState r, double phi, double a, const GasLaw& law) {
  const FunctionalParts p = functional_parts(r, a, law);
  return (phi - p.phi_offset) / p.scale;
}

double w_x_for_psi(RiemannState r, double psi, double a, const GasLaw& law) {
  const FunctionalParts p = functional_parts(r, a, law);
  return (psi - p.psi_offset) / p.scale;
}

double coeff_B(double z, double w, double L, double a, const GasLaw& law) {
  if (law.is_log_branch()) return a / 6.0 * (w - 4.0 * z + 4.0 * (w - z) * L);
  const double b = law.beta();
  return a / (2.0 * b * (b + 1.0) * (2.0 * b - 1.0)) *
         (b * (b * b + 3.0 * b - 2.0) * w + (b * b * b + 2.0 * b * b + 3.0 * b - 2.0) * z);
}

double coeff_B_hat(double z, double w, double L, double a, const GasLaw& law) {
  if (law.is_log_branch()) return a / 6.0 * (z - 4.0 * w - 4.0 * (w - z) * L);
  const double b = law.beta();
  return a / (2.0 * b * (b + 1.0) * (2.0 * b - 1.0)) *
         (b * (b * b + 3.0 * b - 2.0) * z + (b * b * b + 2.0 * b * b + 3.0 * b - 2.0) * w);
}

double coeff_C1(double z, double w, double L, double a, double a_x, const GasLaw& law) {
  if (law.is_log_branch()) {
    const double d = w - z;
    return -(a * a) / 24.0 *
               (3.0 * w * w + 3.0 * z * z + 2.0 * (w * w - 5.0 * w * z + 4.0 * z * z) * L +
                4.0 * d * d * L * L) +
           a_x / 12.0 * (w * w - 2.0 * w * z - 5.0 * z * z + 2.0 * (w * w + w * z - 2.0 * z * z) * L);
  }
  const double b = law.beta();
  const double q = b * b + 3.0 * b - 2.0;
  const double p = b * b * b + 2.0 * b * b + 3.0 * b - 2.0;
  return -(a * a) / (8.0 * b * b * (b + 1.0) * (b + 1.0) * (2.0 * b - 1.0)) *
             (b * (1.0 - b) * (1.0 - b) * w * w + 2.0 * b * q * w * z + p * z * z) -
         a_x / (4.0 * b * (b + 1.0) * (2.0 * b - 1.0)) *
             (b * (1.0 - b) * w * w - 2.0 * b * b * w * z + (2.0 - 3.0 * b - b * b) * z * z);
}

double coeff_C1_hat(double z, double w, double L, double a, double a_x, const GasLaw& law) {
  if (law.is_log_branch()) {
    const double d = w - z;
    return -(a * a) / 24.0 *
               (3.0 * w * w + 3.0 * z * z + 2.0 * (z * z - 5.0 * w * z + 4.0 * w * w) * L +
                4.0 * d * d * L * L) +
           a_x / 12.0 * (z * z - 2.0 * w * z - 5.0 * w * w + 2.0 * (z * z + w * z - 2.0 * w * w) * L);
  }
  const double b = law.beta();
  const double q = b * b + 3.0 * b - 2.0;
  const double p = b * b * b + 2.0 * b * b + 3.0 * b - 2.0;
  return -(a * a) / (8.0 * b * b * (b + 1.0) * (b + 1.0) * (2.0 * b - 1.0)) *
             (b * (1.0 - b) * (1.0 - b) * z * z + 2.0 * b * q * w * z + p * w * w) -
         a_x / (4.0 * b * (b + 1.0) * (2.0 * b - 1.0)) *
             (b * (1.0 - b) * z * z - 2.0 * b * b * w * z + (2.0 - 3.0 * b - b * b) * w * w);
}

RiccatiCoeffs riccati_coeffs(RiemannState r, double a, double a_x, const GasLaw& law) {
  const double g = checked_gap(r);
  RiccatiCoeffs c{};
  if (law.is_log_branch()) {
    const double L = std::log(g);
    c.A = -(2.0 / 3.0) * g;
    c.B = coeff_B(r.z, r.w, L, a, law);
    c.C = coeff_C1(r.z, r.w, L, a, a_x, law) / g;
    c.A_hat = c.A;
    c.B_hat = coeff_B_hat(r.z, r.w, L, a, law);
    c.C_hat = coeff_C1_hat(r.z, r.w, L, a, a_x, law) / g;
    return c;
  }
  const double b = law.beta();
  const double gb = std::pow(g, b);
  c.A = -(b - 1.0) / (2.0 * b - 1.0) / gb;
  c.B = coeff_B(r.z, r.w, 0.0, a, law);
  c.C = gb * coeff_C1(r.z, r.w, 0.0, a, a_x, law);
  c.A_hat = c.A;
  c.B_hat = coeff_B_hat(r.z, r.w, 0.0, a, law);
  c.C_hat = gb * coeff_C1_hat(r.z, r.w, 0.0, a, a_x, law);
  return c;
}

double subsolution_value(double x, double delta1, double M, double alpha) {
  return -delta1 * std::pow(1.0 + M * x, -1.0 - alpha);
}

int barrier_sign(Problem problem, int family) {
  switch (problem) {
    case Problem::P1:
      return family == 1 ? -1 : 1;
    case Problem::P2:
      return 1;
    case Problem::P3:
      return -1;
  }
  return -1;
}

double barrier_value(double x, double delta1, double M, double alpha, int sign) {
  return sign * delta1 * std::pow(1.0 + M * x, -1.0 - alpha);
}

double barrier_rate(double x, double lambda, double delta1, double M, double alpha, int sign) {
  return -sign * (1.0 + alpha) * M * lambda * delta1 * std::pow(1.0 + M * x, -2.0 - alpha);
}

std::vector<double> apriori_upper_bound(std::span<const CoeffSample> series, double phi0) {
  std::vector<double> out;
  out.reserve(series.size());
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const CoeffSample& s = series[k];
    if (!(s.A < 0.0)) throw ContractError("Riccati coefficient A must be negative along the path");
    const double f = s.C - s.B * s.B / (4.0 * s.A);
    if (k > 0) integral += 0.5 * (f + prev) * (s.t - series[k - 1].t);
    prev = f;
    out.push_back(phi0 + integral);
  }
  return out;
}

Certificate check_data_conditions(Problem problem, const DataSamples& data,
                                  const BoundarySamples* boundary, const DataBounds& bounds,
                                  const GasLaw& law) {
  if (!(bounds.delta1 > 0.0)) throw ContractError("delta1 must be positive");
  if (bounds.delta2 < bounds.delta1) throw ContractError("delta2 must not be smaller than delta1");
  Certificate cert(std::string("data conditions ") + to_string(problem));
  const int s_phi = barrier_sign(problem, 1);
  const int s_psi = barrier_sign(problem, 2);
  const char* phi_lo = s_phi < 0 ? "-delta1*(1+Mx)^(-1-alpha) <= Phi(x,0)"
                                 : "delta1*(1+Mx)^(-1-alpha) <= Phi(x,0)";
  const char* psi_lo = s_psi < 0 ? "-delta1*(1+Mx)^(-1-alpha) <= Psi(x,0)"
                                 : "delta1*(1+Mx)^(-1-alpha) <= Psi(x,0)";
  const std::size_t i_phi_lo = cert.begin_pointwise(phi_lo);
  const std::size_t i_phi_hi = cert.begin_pointwise("Phi(x,0) <= delta2");
  const std::size_t i_psi_lo = cert.begin_pointwise(psi_lo);
  const std::size_t i_psi_hi = cert.begin_pointwise("Psi(x,0) <= delta2");
  const double tol = bounds.tolerance;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    const RiemannState r{data.z[i], data.w[i]};
    const PhiPsi f = phi_psi(r, data.z_x[i], data.w_x[i], data.a[i], law);
    const double x = data.x[i];
    const std::string where = at_x(x);
    cert.sample(i_phi_lo, barrier_value(x, bounds.delta1, bounds.M, bounds.alpha, s_phi) - tol,
                f.phi, where);
    cert.sample(i_phi_hi, f.phi, bounds.delta2 + tol, where);
    cert.sample(i_psi_lo, barrier_value(x, bounds.delta1, bounds.M, bounds.alpha, s_psi) - tol,
                f.psi, where);
    cert.sample(i_psi_hi, f.psi, bounds.delta2 + tol, where);
  }
  if (problem == Problem::P2) {
    if (boundary == nullptr) throw ContractError("P2 data conditions need boundary samples");
    const std::size_t b_phi_lo = cert.begin_pointwise("delta1 <= Phi_B(0,t)");
    const std::size_t b_phi_hi = cert.begin_pointwise("Phi_B(0,t) <= delta2");
    const std::size_t b_psi_lo = cert.begin_pointwise("delta1 <= Psi_B(0,t)");
    const std::size_t b_psi_hi = cert.begin_pointwise("Psi_B(0,t) <= delta2");
    for (std::size_t k = 0; k < boundary->t.size(); ++k) {
      const RiemannState r{boundary->z[k], boundary->w[k]};
      const PhiPsi f =
          phi_psi_boundary(r, boundary->z_t[k], boundary->w_t[k], boundary->a0, law);
      const std::string where = at_t(boundary->t[k]);
      cert.sample(b_phi_lo, bounds.delta1 - tol, f.phi, where);
      cert.sample(b_phi_hi, f.phi, bounds.delta2 + tol, where);
      cert.sample(b_psi_lo, bounds.delta1 - tol, f.psi, where);
      cert.sample(b_psi_hi, f.psi, bounds.delta2 + tol, where);
    }
  }
  return cert;
}

Certificate check_compatibility(Problem problem, const OriginTrace& initial,
                                const BoundaryTrace* boundary, double a0, const GasLaw& law,
                                double tol) {
  Certificate cert(std::string("compatibility ") + to_string(problem));
  switch (problem) {
    case Problem::P1:
      cert.check("|w0(0)+z0(0)| <= tol", std::abs(initial.w + initial.z), tol);
      cert.check("|w0'(0)-z0'(0)| <= tol", std::abs(initial.w_x - initial.z_x), tol);
      break;
    case Problem::P2: {
      if (boundary == nullptr) throw ContractError("P2 compatibility needs boundary data");
      const CharSpeeds s = char_speeds({initial.z, initial.w}, law);
      const double S =
          0.125 * (law.gamma() - 1.0) * a0 * (initial.w * initial.w - initial.z * initial.z);
      cert.check("|z0(0)-zB(0)| <= tol", std::abs(initial.z - boundary->z), tol);
      cert.check("|w0(0)-wB(0)| <= tol", std::abs(initial.w - boundary->w), tol);
      cert.check("|zB'(0)+lambda1*z0'(0)-S| <= tol",
                 std::abs(boundary->z_t + s.lambda1 * initial.z_x - S), tol);
      cert.check("|wB'(0)+lambda2*w0'(0)+S| <= tol",
                 std::abs(boundary->w_t + s.lambda2 * initial.w_x + S), tol);
      break;
    }
    case Problem::P3:
      cert.note("no boundary condition, no compatibility identities");
      break;
  }
  return cert;
}

}  // namespace nozzle
