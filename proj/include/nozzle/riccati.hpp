#pragma once

#include <span>
#include <vector>

#include "nozzle/certificate.hpp"
#include "nozzle/model.hpp"
#include "nozzle/region.hpp"

namespace nozzle {

struct PhiPsi {
  double phi;
  double psi;
};

/// Phi = scale z_x + phi_offset and Psi = scale w_x + psi_offset, where scale = (w-z)^beta
/// (1/(w-z) on the log branch) and the offsets collect the a(x) terms.
struct FunctionalParts {
  double scale;
  double phi_offset;
  double psi_offset;
};

FunctionalParts functional_parts(RiemannState r, double a, const GasLaw& law);

/// Throws VacuumError when w - z is below the vacuum gap.
PhiPsi phi_psi(RiemannState r, double z_x, double w_x, double a, const GasLaw& law);

/// Boundary forms: z_x and w_x replaced through the diagonal system,
/// z_x = -(z_t - S)/lambda1 and w_x = -(w_t + S)/lambda2 with S = (gamma-1)/8 a (w^2-z^2).
/// Throws PoleError at a sonic state.
PhiPsi phi_psi_boundary(RiemannState r, double z_t, double w_t, double a, const GasLaw& law);

/// Inverse of phi_psi for the derivative: z_x giving the prescribed Phi (resp. w_x for Psi).
double z_x_for_phi(RiemannState r, double phi, double a, const GasLaw& law);
double w_x_for_psi(RiemannState r, double psi, double a, const GasLaw& law);

struct RiccatiCoeffs {
  double A;
  double B;
  double C;
  double A_hat;
  double B_hat;
  double C_hat;
};

/// Coefficient pieces with the logarithm passed explicitly as L (used only on the log branch), so
/// the z <-> w interchange can be evaluated with log(w-z) held fixed.
double coeff_B(double z, double w, double L, double a, const GasLaw& law);
double coeff_B_hat(double z, double w, double L, double a, const GasLaw& law);
double coeff_C1(double z, double w, double L, double a, double a_x, const GasLaw& law);
double coeff_C1_hat(double z, double w, double L, double a, double a_x, const GasLaw& law);

/// Throws VacuumError when w - z is below the vacuum gap.
RiccatiCoeffs riccati_coeffs(RiemannState r, double a, double a_x, const GasLaw& law);

inline double riccati_rhs(double A, double B, double C, double phi) {
  return A * phi * phi + B * phi + C;
}

/// -delta1 (1+Mx)^(-1-alpha).
double subsolution_value(double x, double delta1, double M, double alpha);

/// Sign of the lower barrier sign*delta1*(1+Mx)^(-1-alpha) for a family in a problem:
/// negative for families with negative speed, positive for families with positive speed.
int barrier_sign(Problem problem, int family);
double barrier_value(double x, double delta1, double M, double alpha, int sign);
/// Time derivative of the barrier along dx/dt = lambda.
double barrier_rate(double x, double lambda, double delta1, double M, double alpha, int sign);

struct CoeffSample {
  double t;
  double A;
  double B;
  double C;
};

/// Phi0 plus the running trapezoid integral of C - B^2/(4A). Throws ContractError if some A >= 0.
std::vector<double> apriori_upper_bound(std::span<const CoeffSample> series, double phi0);

struct DataBounds {
  double delta1;
  double delta2;
  double M;
  double alpha;
  /// Round-off allowance on every two-sided bound.
  double tolerance = 1e-12;
};

/// Initial data sampled at t = 0.
struct DataSamples {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> w;
  std::vector<double> z_x;
  std::vector<double> w_x;
  std::vector<double> a;
};

/// Boundary data sampled at x = 0 (P2 only).
struct BoundarySamples {
  std::vector<double> t;
  std::vector<double> z;
  std::vector<double> w;
  std::vector<double> z_t;
  std::vector<double> w_t;
  double a0 = 0.0;
};

/// Two-sided bounds on Phi, Psi at t = 0 (and Phi_B, Psi_B at x = 0 for P2).
/// Throws ContractError when delta2 < delta1 or delta1 <= 0.
Certificate check_data_conditions(Problem problem, const DataSamples& data,
                                  const BoundarySamples* boundary, const DataBounds& bounds,
                                  const GasLaw& law);

struct OriginTrace {
  double z;
  double w;
  double z_x;
  double w_x;
};

struct BoundaryTrace {
  double z;
  double w;
  double z_t;
  double w_t;
};

/// Compatibility identities at (0, 0); pass iff every |residual| <= tol.
Certificate check_compatibility(Problem problem, const OriginTrace& initial,
                                const BoundaryTrace* boundary, double a0, const GasLaw& law,
                                double tol = 1e-8);

}  // namespace nozzle
