#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nozzle/errors.hpp"
#include "nozzle/riccati.hpp"
#include "oracles.hpp"

using namespace nozzle;

namespace {

const GasLaw kMono = GasLaw::parse("5/3");
const GasLaw kAir = GasLaw::parse("7/5");

std::vector<std::string> failing(const Certificate& c) {
  std::vector<std::string> names;
  for (const auto* q : c.failures()) names.push_back(q->name);
  return names;
}

// Smooth manufactured snapshot: z, w, a and their x-derivatives.
struct Manufactured {
  double z(double x) const { return -1.1 + 0.2 * std::sin(x); }
  double zx(double x) const { return 0.2 * std::cos(x); }
  double w(double x) const { return 0.9 + 0.1 * std::cos(2 * x); }
  double wx(double x) const { return -0.2 * std::sin(2 * x); }
  double a(double x) const { return 0.3 / ((1 + x) * (1 + x)); }
  double ax(double x) const { return -0.6 / ((1 + x) * (1 + x) * (1 + x)); }
};

}  // namespace

TEST_CASE("functionals at worked states") {
  for (const auto* law : {&kMono, &kAir}) {
    const auto f = phi_psi({-3.0, 3.0}, 0.0, 0.0, 0.0, *law);
    CHECK(f.phi == 0.0);
    CHECK(f.psi == 0.0);
  }
  auto f = phi_psi({-3.0, 3.0}, 6.0, 6.0, 0.0, kMono);
  CHECK(f.phi == doctest::Approx(1.0));
  CHECK(f.psi == doctest::Approx(1.0));
  CHECK(GasLaw::parse("1.4").beta() == doctest::Approx(-2.0));
  f = phi_psi({1.0, 2.0}, 0.5, 0.0, 0.1, GasLaw::parse("1.4"));
  CHECK(f.phi == doctest::Approx(0.425).epsilon(1e-13));
  CHECK_THROWS_AS(phi_psi({1.0, 1.0}, 0.0, 0.0, 0.0, kMono), VacuumError);
}

TEST_CASE("functionals agree with the transcribed formulas and invert") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), gap(0.2, 3.0), gam(1.05, 5.0 / 3.0);
  for (int k = 0; k < 1000; ++k) {
    const auto law = k % 2 ? kMono : GasLaw::from_gamma(gam(rng));
    const double z = u(rng), w = z + gap(rng), zx = u(rng), wx = u(rng), a = 0.3 * u(rng);
    double phi, psi;
    oracle::phi_psi(z, w, zx, wx, a, law.gamma(), phi, psi);
    const auto f = phi_psi({z, w}, zx, wx, a, law);
    REQUIRE(f.phi == doctest::Approx(phi).epsilon(1e-12));
    REQUIRE(f.psi == doctest::Approx(psi).epsilon(1e-12));
    REQUIRE(z_x_for_phi({z, w}, f.phi, a, law) == doctest::Approx(zx).epsilon(1e-10));
    REQUIRE(w_x_for_psi({z, w}, f.psi, a, law) == doctest::Approx(wx).epsilon(1e-10));
    // linear in the derivatives when a = 0
    const auto g1 = phi_psi({z, w}, zx, wx, 0.0, law);
    const auto g2 = phi_psi({z, w}, 2 * zx, 3 * wx, 0.0, law);
    REQUIRE(g2.phi == doctest::Approx(2 * g1.phi));
    REQUIRE(g2.psi == doctest::Approx(3 * g1.psi));
  }
}

TEST_CASE("boundary functionals") {
  // supersonic rightward state, no time variation, straight duct
  auto fb = phi_psi_boundary({1.0, 1.2}, 0.0, 0.0, 0.0, kMono);
  CHECK(fb.phi == 0.0);
  CHECK(fb.psi == 0.0);
  // time-stationary characteristic datum: the braces vanish, only the a-terms remain
  const RiemannState r{1.0, 1.2};
  const double a = 0.05;
  const double S = (kMono.gamma() - 1) / 8 * a * (r.w * r.w - r.z * r.z);
  fb = phi_psi_boundary(r, S, -S, a, kMono);
  const auto pure = phi_psi(r, 0.0, 0.0, a, kMono);
  CHECK(fb.phi == doctest::Approx(pure.phi));
  CHECK(fb.psi == doctest::Approx(pure.psi));
  // sonic state
  CHECK_THROWS_AS(phi_psi_boundary({-1.0, 2.0}, 0.1, 0.1, 0.0, kMono), PoleError);
}

TEST_CASE("boundary functionals match the interior ones on a smooth solution") {
  const Manufactured m;
  for (const auto* law : {&kMono, &kAir}) {
    for (double x : {0.0, 0.4, 1.3}) {
      const RiemannState r{m.z(x) + 3.0, m.w(x) + 3.2};  // supersonic, nonsonic
      const auto s = char_speeds(r, *law);
      const double S = (law->gamma() - 1) / 8 * m.a(x) * (r.w * r.w - r.z * r.z);
      const double zt = S - s.lambda1 * m.zx(x);
      const double wt = -S - s.lambda2 * m.wx(x);
      const auto fb = phi_psi_boundary(r, zt, wt, m.a(x), *law);
      const auto fi = phi_psi(r, m.zx(x), m.wx(x), m.a(x), *law);
      CHECK(fb.phi == doctest::Approx(fi.phi).epsilon(1e-12));
      CHECK(fb.psi == doctest::Approx(fi.psi).epsilon(1e-12));
    }
  }
}

TEST_CASE("Riccati coefficients at worked states") {
  auto c = riccati_coeffs({-3.0, 3.0}, 0.0, 0.0, kMono);
  CHECK(c.A == doctest::Approx(-4.0));
  CHECK(c.A_hat == c.A);
  CHECK(c.B == 0.0);
  CHECK(c.C == 0.0);
  CHECK(c.B_hat == 0.0);
  CHECK(c.C_hat == 0.0);
  c = riccati_coeffs({1.0, 2.0}, 0.0, 0.0, kAir);
  // -(beta-1)/(2beta-1) (w-z)^(-beta) with beta = -2
  CHECK(c.A == doctest::Approx(-0.6));
  CHECK_THROWS_AS(riccati_coeffs({1.0, 1.0}, 0.1, 0.0, kMono), VacuumError);
}

TEST_CASE("A is negative for every state away from vacuum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0), gap(1e-3, 5.0), gam(1.01, 5.0 / 3.0);
  for (int k = 0; k < 1000; ++k) {
    const auto law = k % 3 ? GasLaw::from_gamma(gam(rng)) : kMono;
    const double z = u(rng);
    REQUIRE(riccati_coeffs({z, z + gap(rng)}, u(rng), u(rng), law).A < 0.0);
  }
}

TEST_CASE("swap symmetry of B and the polynomial part of C1, both branches") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0), gam(1.05, 1.6);
  auto rel = [](double p, double q) { return std::abs(p - q) / std::max(1.0, std::abs(q)); };
  for (int k = 0; k < 1000; ++k) {
    const auto law = k % 2 ? kMono : GasLaw::from_gamma(gam(rng));
    const double z = u(rng), w = u(rng), L = u(rng), a = u(rng), ax = u(rng);
    REQUIRE(rel(coeff_B_hat(z, w, L, a, law), coeff_B(w, z, L, a, law)) <= 1e-12);
    REQUIRE(rel(coeff_C1_hat(z, w, L, a, ax, law), coeff_C1(w, z, L, a, ax, law)) <= 1e-12);
  }
}

TEST_CASE("Phi and Psi satisfy their Riccati equations on a manufactured field") {
  // With z(x,t) = z(x) + t z_t(x) taken from the diagonal system, the derivative of Phi along
  // dx/dt = lambda1 at t = 0 is exact to O(h^2) by a centred difference in (x, t).
  const Manufactured m;
  for (const auto* law : {&kMono, &kAir}) {
    const double g = law->gamma();
    auto zt = [&](double x) {
      const RiemannState r{m.z(x), m.w(x)};
      const double S = (g - 1) / 8 * m.a(x) * (r.w * r.w - r.z * r.z);
      return S - char_speeds(r, *law).lambda1 * m.zx(x);
    };
    auto wt = [&](double x) {
      const RiemannState r{m.z(x), m.w(x)};
      const double S = (g - 1) / 8 * m.a(x) * (r.w * r.w - r.z * r.z);
      return -S - char_speeds(r, *law).lambda2 * m.wx(x);
    };
    auto d_dx = [](auto fn, double x) {
      const double h = 1e-5;
      return (fn(x + h) - fn(x - h)) / (2 * h);
    };
    auto field = [&](double x, double t) {
      const double z = m.z(x) + t * zt(x), w = m.w(x) + t * wt(x);
      const double zx = m.zx(x) + t * d_dx(zt, x), wx = m.wx(x) + t * d_dx(wt, x);
      return phi_psi({z, w}, zx, wx, m.a(x), *law);
    };
    for (double x : {0.3, 0.8, 1.7}) {
      const RiemannState r{m.z(x), m.w(x)};
      const auto sp = char_speeds(r, *law);
      const auto c = riccati_coeffs(r, m.a(x), m.ax(x), *law);
      const auto f = phi_psi(r, m.zx(x), m.wx(x), m.a(x), *law);
      const double h = 1e-4;
      const double dphi =
          (field(x + sp.lambda1 * h, h).phi - field(x - sp.lambda1 * h, -h).phi) / (2 * h);
      const double dpsi =
          (field(x + sp.lambda2 * h, h).psi - field(x - sp.lambda2 * h, -h).psi) / (2 * h);
      CHECK(std::abs(dphi - riccati_rhs(c.A, c.B, c.C, f.phi)) < 1e-6);
      CHECK(std::abs(dpsi - riccati_rhs(c.A_hat, c.B_hat, c.C_hat, f.psi)) < 1e-6);
      // the printed reading with B_hat multiplying Phi does not satisfy the identity
      const double printed = c.A_hat * f.psi * f.psi + c.B_hat * f.phi + c.C_hat;
      CHECK(std::abs(dpsi - printed) > 1e-4);
    }
  }
}

TEST_CASE("branches approach each other as gamma tends to 5/3") {
  // Phi_beta = Phi_log + k with k = a/(2(beta+1)) up to o(1), so along dx/dt = lambda1 the
  // matched right-hand sides differ by the transport of k.
  const RiemannState r{-1.05, 0.95};
  const double a = 0.04, ax = -0.3, phi = 0.07;
  const auto log_c = riccati_coeffs(r, a, ax, kMono);
  const double ref = riccati_rhs(log_c.A, log_c.B, log_c.C, phi);
  double previous = INFINITY;
  for (double gap : {1e-2, 1e-3, 1e-4}) {
    const auto law = GasLaw::from_gamma(5.0 / 3.0 - gap);
    const auto c = riccati_coeffs(r, a, ax, law);
    const double k = a / (2 * (law.beta() + 1));
    const double kx = ax / (2 * (law.beta() + 1));
    const double lam = char_speeds(r, law).lambda1;
    const double diff = std::abs(riccati_rhs(c.A, c.B, c.C, phi + k) - lam * kx - ref);
    CHECK(diff < previous);
    previous = diff;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("subsolution barrier") {
  CHECK(subsolution_value(0.0, 0.2, 10.0, 1.0) == -0.2);
  CHECK(subsolution_value(1.0, 0.1, 10.0, 1.0) == doctest::Approx(-0.1 / 121.0));
  CHECK(subsolution_value(1e8, 0.1, 10.0, 1.0) < 0.0);
  CHECK(subsolution_value(1e8, 0.1, 10.0, 1.0) > -1e-17);
  CHECK(barrier_value(1.0, 0.1, 10.0, 1.0, -1) == subsolution_value(1.0, 0.1, 10.0, 1.0));
  CHECK(barrier_sign(Problem::P1, 1) == -1);
  CHECK(barrier_sign(Problem::P1, 2) == 1);
  CHECK(barrier_sign(Problem::P2, 1) == 1);
  CHECK(barrier_sign(Problem::P2, 2) == 1);
  CHECK(barrier_sign(Problem::P3, 1) == -1);
  CHECK(barrier_sign(Problem::P3, 2) == -1);
  // rate along dx/dt = lambda against a difference quotient
  const double x = 0.4, lam = -0.7, h = 1e-6;
  for (int sign : {-1, 1}) {
    const double fd = (barrier_value(x + lam * h, 0.2, 10, 1, sign) -
                       barrier_value(x - lam * h, 0.2, 10, 1, sign)) / (2 * h);
    CHECK(barrier_rate(x, lam, 0.2, 10, 1, sign) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("a-priori upper bound") {
  std::vector<CoeffSample> flat;
  for (int k = 0; k <= 20; ++k) flat.push_back({0.1 * k, -1.0, 0.0, 0.0});
  for (double v : apriori_upper_bound(flat, 0.3)) CHECK(v == 0.3);

  const std::vector<CoeffSample> one{{0.0, -2.0, 0.5, 0.7}};
  CHECK(apriori_upper_bound(one, 0.3) == std::vector<double>{0.3});

  std::vector<CoeffSample> constant;
  for (int k = 0; k <= 200; ++k) constant.push_back({0.01 * k, -1.0, 0.0, 0.5});
  CHECK(apriori_upper_bound(constant, 0.25).back() == doctest::Approx(1.25).epsilon(1e-14));

  // C - B^2/(4A) = 0.5 + 1/4 for B = 1, A = -1
  for (auto& s : constant) s.B = 1.0;
  CHECK(apriori_upper_bound(constant, 0.0).back() == doctest::Approx(1.5).epsilon(1e-14));

  constant[100].A = 0.0;
  CHECK_THROWS_AS(apriori_upper_bound(constant, 0.0), ContractError);
}

TEST_CASE("data conditions") {
  DataSamples d;
  for (int i = 0; i <= 50; ++i) {
    d.x.push_back(0.1 * i);
    d.z.push_back(-1.01);
    d.w.push_back(1.0);
    d.z_x.push_back(0.0);
    d.w_x.push_back(0.0);
    d.a.push_back(0.0);
  }
  const DataBounds b{0.1, 1.0, 10.0, 1.0};
  CHECK(check_data_conditions(Problem::P3, d, nullptr, b, kMono).pass());
  // the second family of P1 needs Psi above +delta1 (1+Mx)^(-1-alpha)
  CHECK(failing(check_data_conditions(Problem::P1, d, nullptr, b, kMono)) ==
        std::vector<std::string>{"delta1*(1+Mx)^(-1-alpha) <= Psi(x,0)"});

  DataSamples r = d;
  for (auto& z : r.z) z = 1.0;
  for (auto& w : r.w) w = 1.2;
  BoundarySamples bs;
  for (int k = 0; k <= 10; ++k) {
    bs.t.push_back(0.5 * k);
    bs.z.push_back(1.0);
    bs.w.push_back(1.2);
    bs.z_t.push_back(0.0);
    bs.w_t.push_back(0.0);
  }
  const auto p2 = check_data_conditions(Problem::P2, r, &bs, b, kMono);
  CHECK_FALSE(p2.pass());
  CHECK_FALSE(p2.find("delta1*(1+Mx)^(-1-alpha) <= Phi(x,0)")->pass);
  CHECK_FALSE(p2.find("delta1 <= Phi_B(0,t)")->pass);

  // slopes chosen so Phi and Psi sit exactly on the P2 barrier
  const double a = 0.02;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double bar = b.delta1 * std::pow(1 + b.M * r.x[i], -1 - b.alpha);
    r.a[i] = a;
    r.z_x[i] = z_x_for_phi({r.z[i], r.w[i]}, bar, a, kMono);
    r.w_x[i] = w_x_for_psi({r.z[i], r.w[i]}, bar, a, kMono);
  }
  const auto exact = check_data_conditions(Problem::P2, r, &bs, b, kMono);
  const auto* lo = exact.find("delta1*(1+Mx)^(-1-alpha) <= Phi(x,0)");
  CHECK(lo->pass);
  CHECK(std::abs(lo->slack - b.tolerance) < 1e-13);

  CHECK_THROWS_AS(check_data_conditions(Problem::P3, d, nullptr, {0.5, 0.1, 10.0, 1.0}, kMono),
                  ContractError);
  CHECK_THROWS_AS(check_data_conditions(Problem::P2, r, nullptr, b, kMono), ContractError);
}

TEST_CASE("compatibility identities") {
  // reflected construction: v0(0) = 0 and w0' = z0'
  CHECK(check_compatibility(Problem::P1, {-1.01, 1.01, 0.3, 0.3}, nullptr, 0.05, kMono).pass());
  const auto off = check_compatibility(Problem::P1, {-1.01, 1.11, 0.3, 0.3}, nullptr, 0.05, kMono);
  CHECK(failing(off) == std::vector<std::string>{"|w0(0)+z0(0)| <= tol"});
  CHECK(off.find("|w0(0)+z0(0)| <= tol")->lhs == doctest::Approx(0.1));

  // constant boundary data, z0'(0) and w0'(0) solved from the trace relations
  const RiemannState r{1.0, 1.2};
  const double a0 = 0.03;
  const auto s = char_speeds(r, kMono);
  const double S = (kMono.gamma() - 1) / 8 * a0 * (r.w * r.w - r.z * r.z);
  const BoundaryTrace bt{1.0, 1.2, 0.0, 0.0};
  const OriginTrace ot{1.0, 1.2, S / s.lambda1, -S / s.lambda2};
  const auto p2 = check_compatibility(Problem::P2, ot, &bt, a0, kMono);
  CHECK(p2.pass());
  CHECK(p2.find("|zB'(0)+lambda1*z0'(0)-S| <= tol")->lhs < 1e-15);
  const OriginTrace bad{1.0, 1.2, 0.0, -S / s.lambda2};
  CHECK(failing(check_compatibility(Problem::P2, bad, &bt, a0, kMono)) ==
        std::vector<std::string>{"|zB'(0)+lambda1*z0'(0)-S| <= tol"});
  CHECK(check_compatibility(Problem::P3, ot, nullptr, a0, kMono).pass());
}
