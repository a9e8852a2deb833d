#include "nozzle/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

std::string at_x(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "x=%.6g", x);
  return buf;
}

double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  const double ghi = g(hi);
  if (!(glo * ghi < 0.0)) throw InternalError("bisection bracket does not change sign");
  for (int i = 0; i < 400 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Range {
  double lo;
  double hi;
};

// Range of cm e^(-s) + cp e^(s) over s in [0, I].
Range exp_range(double cm, double cp, double I) {
  auto value = [&](double s) { return cm * std::exp(-s) + cp * std::exp(s); };
  Range r{value(0.0), value(0.0)};
  auto include = [&](double v) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  };
  include(value(I));
  if (cm * cp > 0.0) {
    const double s_star = 0.5 * std::log(cm / cp);
    if (s_star > 0.0 && s_star < I) include(value(s_star));
  }
  return r;
}

// Face values as cm e^(-s) + cp e^(s) coefficient pairs.
struct Face {
  double cm;
  double cp;
};

std::array<Face, 4> faces(RegionKind kind, const RegionConstants& c) {
  switch (kind) {
    case RegionKind::m:
      return {Face{-c.L1, 0.0}, Face{0.0, -c.U1}, Face{c.L2, 0.0}, Face{0.0, c.U2}};
    case RegionKind::r:
      return {Face{c.L1, 0.0}, Face{0.0, c.U1}, Face{c.L2, 0.0}, Face{0.0, c.U2}};
    case RegionKind::l:
      return {Face{-c.L1, 0.0}, Face{0.0, -c.U1}, Face{-c.L2, 0.0}, Face{0.0, -c.U2}};
  }
  throw InternalError("unknown region kind");
}

}  // namespace

double f_eval(double r, const GasLaw& law) {
  const double den = std::abs(r * r - 1.0);
  if (den == 0.0) throw PoleError("f(r) has poles at r = +-1");
  const double g = law.gamma();
  return (2.0 / (g - 1.0)) * (g + 1.0 + (3.0 - g) * r) / den;
}

CriticalConstants critical_constants(const GasLaw& law) {
  const double g = law.gamma();
  const double r_star = (-(g + 1.0) + std::sqrt(8.0 * (g - 1.0))) / (3.0 - g);
  const double l = f_eval(r_star, law);
  auto excess = [&](double r) { return f_eval(r, law) - l; };
  // On r < -1, f falls from +inf at -1 to 0 at -(gamma+1)/(3-gamma) >= -2.
  const double sigma1 = -bisect(excess, -2.0, -1.0 - 1e-15);
  double hi = 2.0;
  while (excess(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw InternalError("no root of f(r) = l on r > 1");
  }
  const double sigma2 = bisect(excess, 1.0 + 1e-15, hi);
  return {l, sigma1, sigma2};
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::m:
      return "m";
    case RegionKind::r:
      return "r";
    case RegionKind::l:
      return "l";
  }
  return "?";
}

const char* to_string(Problem problem) {
  switch (problem) {
    case Problem::P1:
      return "P1";
    case Problem::P2:
      return "P2";
    case Problem::P3:
      return "P3";
  }
  return "?";
}

RegionKind parse_region_kind(const std::string& text) {
  if (text == "m") return RegionKind::m;
  if (text == "r") return RegionKind::r;
  if (text == "l") return RegionKind::l;
  throw DomainError("unknown region kind '" + text + "' (expected m, r or l)");
}

Problem parse_problem(const std::string& text) {
  if (text == "P1" || text == "p1") return Problem::P1;
  if (text == "P2" || text == "p2") return Problem::P2;
  if (text == "P3" || text == "p3") return Problem::P3;
  throw DomainError("unknown problem '" + text + "' (expected P1, P2 or P3)");
}

RegionKind kind_for(Problem problem) {
  switch (problem) {
    case Problem::P1:
      return RegionKind::m;
    case Problem::P2:
      return RegionKind::r;
    case Problem::P3:
      return RegionKind::l;
  }
  throw InternalError("unknown problem");
}

Envelope envelope(RegionKind kind, const RegionConstants& c, double s) {
  const double em = std::exp(-s);
  const double ep = std::exp(s);
  switch (kind) {
    case RegionKind::m:
      return {-c.L1 * em, -c.U1 * ep, c.L2 * em, c.U2 * ep};
    case RegionKind::r:
      return {c.L1 * em, c.U1 * ep, c.L2 * em, c.U2 * ep};
    case RegionKind::l:
      return {-c.L1 * em, -c.U1 * ep, -c.L2 * em, -c.U2 * ep};
  }
  throw InternalError("unknown region kind");
}

double MarginReport::min() const { return std::min({z_lo, z_hi, w_lo, w_hi, gap}); }

const char* MarginReport::tightest() const {
  const double m = min();
  if (z_lo == m) return "z_lo";
  if (z_hi == m) return "z_hi";
  if (w_lo == m) return "w_lo";
  if (w_hi == m) return "w_hi";
  return "gap";
}

MarginReport membership_at(RiemannState r, double s, RegionKind kind, const RegionConstants& c) {
  const Envelope e = envelope(kind, c, s);
  return {r.z - e.z_lo, e.z_hi - r.z, r.w - e.w_lo, e.w_hi - r.w, r.w - r.z};
}

MarginReport membership(RiemannState r, double x, const RegionSpec& spec) {
  return membership_at(r, spec.profile->cum_abar(x), spec.kind, spec.c);
}

double abar_cumulative(const NozzleProfile& profile, double x) { return profile.cum_abar(x); }

SpeedBounds region_speed_bounds(RegionKind kind, const RegionConstants& c, double I,
                                const GasLaw& law) {
  const double th = law.theta();
  const auto f = faces(kind, c);
  double l1_min = std::numeric_limits<double>::infinity();
  double l1_max = -l1_min;
  double l2_min = l1_min;
  double l2_max = -l1_min;
  for (int iz = 0; iz < 2; ++iz) {
    for (int iw = 2; iw < 4; ++iw) {
      const Face zf = f[static_cast<std::size_t>(iz)];
      const Face wf = f[static_cast<std::size_t>(iw)];
      const Range r1 = exp_range(0.5 * ((1 + th) * zf.cm + (1 - th) * wf.cm),
                                 0.5 * ((1 + th) * zf.cp + (1 - th) * wf.cp), I);
      const Range r2 = exp_range(0.5 * ((1 - th) * zf.cm + (1 + th) * wf.cm),
                                 0.5 * ((1 - th) * zf.cp + (1 + th) * wf.cp), I);
      l1_min = std::min(l1_min, r1.lo);
      l1_max = std::max(l1_max, r1.hi);
      l2_min = std::min(l2_min, r2.lo);
      l2_max = std::max(l2_max, r2.hi);
    }
  }
  SpeedBounds b{};
  const double e = std::exp(I);
  switch (kind) {
    case RegionKind::m:
      b.d1 = -l1_max;
      b.C1 = c.L1;
      b.C2 = c.U2 * e;
      b.C3 = c.U1 + c.L2 / e;
      break;
    case RegionKind::r:
      b.d1 = l1_min;
      b.C1 = c.U1 * e;
      b.C2 = c.U2 * e;
      b.C3 = c.L2 / e - c.U1 * e;
      break;
    case RegionKind::l:
      b.d1 = -l2_max;
      b.C1 = c.L1;
      b.C2 = c.L2;
      b.C3 = c.U1 - c.L2;
      break;
  }
  b.lambda_min = l1_min;
  b.lambda_max = l2_max;
  b.speed_max = std::max(std::abs(l1_min), std::abs(l2_max));
  if (!(b.d1 > 0.0)) {
    throw ContractError(std::string("nonpositive characteristic speed bound d1 for region ") +
                        to_string(kind));
  }
  return b;
}

SpeedBounds region_speed_bounds(const RegionSpec& spec, const GasLaw& law) {
  return region_speed_bounds(spec.kind, spec.c, spec.I(), law);
}

std::vector<double> sample_grid(double x_max, std::size_t samples) {
  if (samples < 2) throw DomainError("sample grid needs at least two points");
  std::vector<double> x(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    x[i] = x_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  return x;
}

Certificate check_H1(const NozzleProfile& profile, std::span<const double> x_grid) {
  Certificate cert("H1");
  const DecayConstants& d = profile.decay();
  const std::size_t sq = cert.begin_pointwise("a^2 <= k1*(1+Mx)^(-2-alpha)");
  const std::size_t dv = cert.begin_pointwise("|a'| <= k2*(1+Mx)^(-2-alpha)");
  for (double x : x_grid) {
    const double decay = std::pow(1.0 + d.M * x, -2.0 - d.alpha);
    const double a = profile.a(x);
    cert.sample(sq, a * a, d.k1 * decay, at_x(x));
    cert.sample(dv, std::abs(profile.a_prime(x)), d.k2 * decay, at_x(x));
  }
  return cert;
}

Certificate check_constants(RegionKind kind, const RegionConstants& c, double I,
                            const GasLaw& law, const CriticalConstants& cc,
                            double strict_margin) {
  const double g = law.gamma();
  const double e2 = std::exp(2.0 * I);
  Certificate cert;
  switch (kind) {
    case RegionKind::m:
      cert.check("U1*exp(2I) <= L1", c.U1 * e2, c.L1);
      cert.check("L2 <= U2", c.L2, c.U2);
      cert.check("(3-gamma)/(gamma+1) < L2/L1", (3 - g) / (g + 1), c.L2 / c.L1, true,
                 strict_margin);
      cert.check("U2/U1 < (gamma+1)/(3-gamma)", c.U2 / c.U1, (g + 1) / (3 - g), true,
                 strict_margin);
      cert.check("L1/L2 <= sigma1", c.L1 / c.L2, cc.sigma1);
      cert.check("U2/U1 <= sigma1", c.U2 / c.U1, cc.sigma1);
      cert.check("L1 <= U2", c.L1, c.U2);
      cert.check("L2 <= U1", c.L2, c.U1);
      break;
    case RegionKind::r:
      cert.check("L1 <= U1", c.L1, c.U1);
      cert.check("L2 <= U2", c.L2, c.U2);
      cert.check("U1*exp(2I) < L2", c.U1 * e2, c.L2, true, strict_margin);
      cert.check("(U2/L1)*exp(2I) <= sigma2", c.U2 / c.L1 * e2, cc.sigma2);
      break;
    case RegionKind::l:
      cert.check("U1*exp(2I) <= L1", c.U1 * e2, c.L1);
      cert.check("U2*exp(2I) <= L2", c.U2 * e2, c.L2);
      cert.check("L2 < U1", c.L2, c.U1, true, strict_margin);
      cert.check("L1/(U2*exp(2I)) <= sigma2", c.L1 / (c.U2 * e2), cc.sigma2);
      break;
  }
  return cert;
}

namespace {

Certificate check_hypothesis_kind(const char* title, RegionKind expected, const RegionSpec& spec,
                                  const GasLaw& law, const CriticalConstants& cc,
                                  const HypothesisOptions& options) {
  if (spec.kind != expected) {
    throw ContractError(std::string(title) + " applies to region kind " + to_string(expected));
  }
  Certificate cert(title);
  const NozzleProfile& p = *spec.profile;
  // Checked in the normalized form |a|/(l abar) < 1 so the strict margin is meaningful where both
  // sides decay.
  const std::size_t pw = cert.begin_pointwise("|a|/(l*abar) < 1", true, options.strict_margin);
  for (double x : sample_grid(options.x_max, options.samples)) {
    const double bound = cc.l * p.abar(x);
    const double a = std::abs(p.a(x));
    double ratio;
    if (bound > 0.0) {
      ratio = a / bound;
    } else {
      ratio = a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    cert.sample(pw, ratio, 1.0, at_x(x));
  }
  cert.add(check_constants(spec.kind, spec.c, p.I_total(), law, cc, options.strict_margin));
  if (p.conditional()) {
    cert.set_conditional(true);
    cert.note("total majorant integral rests on an unverified tail bound");
  }
  return cert;
}

}  // namespace

Certificate check_H2(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options) {
  return check_hypothesis_kind("H2", RegionKind::m, spec, law, cc, options);
}

Certificate check_H3(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options) {
  return check_hypothesis_kind("H3", RegionKind::r, spec, law, cc, options);
}

Certificate check_H4(const RegionSpec& spec, const GasLaw& law, const CriticalConstants& cc,
                     const HypothesisOptions& options) {
  return check_hypothesis_kind("H4", RegionKind::l, spec, law, cc, options);
}

Certificate check_hypothesis(const RegionSpec& spec, const GasLaw& law,
                             const CriticalConstants& cc, const HypothesisOptions& options) {
  switch (spec.kind) {
    case RegionKind::m:
      return check_H2(spec, law, cc, options);
    case RegionKind::r:
      return check_H3(spec, law, cc, options);
    case RegionKind::l:
      return check_H4(spec, law, cc, options);
  }
  throw InternalError("unknown region kind");
}

namespace {

double objective(RegionKind kind, const RegionConstants& c, double I, const GasLaw& law,
                 const CriticalConstants& cc, double strict_margin) {
  const Certificate cert = check_constants(kind, c, I, law, cc, strict_margin);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& q : cert.items()) m = std::min(m, q.slack - (q.strict ? strict_margin : 0.0));
  return m;
}

RegionConstants from_logs(const std::array<double, 3>& u) {
  RegionConstants c;
  c.U1 = 1.0;
  c.L1 = std::exp(u[0]);
  c.L2 = c.L1 * std::exp(u[1]);
  c.U2 = std::exp(u[2]);
  return c;
}

}  // namespace

FeasibilityResult find_constants(const GasLaw& law, double I, RegionKind kind,
                                 double strict_margin) {
  if (!(I >= 0.0)) throw DomainError("total majorant integral must be nonnegative");
  const CriticalConstants cc = critical_constants(law);
  FeasibilityResult result;
  result.kind = kind;
  constexpr int kGrid = 40;
  const double lo = std::log(0.25);
  const double hi = std::log(4.0);
  const double step0 = (hi - lo) / (kGrid - 1);
  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      for (int k = 0; k < kGrid; ++k) {
        const std::array<double, 3> u{lo + step0 * i, lo + step0 * j, lo + step0 * k};
        const double v = objective(kind, from_logs(u), I, law, cc, strict_margin);
        ++result.evaluations;
        if (v > best_value) {
          best_value = v;
          best = u;
        }
      }
    }
  }
  // Coordinate search with halving steps, kept inside the searched box.
  double step = step0;
  while (step > 1e-12) {
    bool improved = false;
    for (std::size_t d = 0; d < 3; ++d) {
      for (double sign : {-1.0, 1.0}) {
        std::array<double, 3> u = best;
        u[d] = std::clamp(u[d] + sign * step, lo, hi);
        const double v = objective(kind, from_logs(u), I, law, cc, strict_margin);
        ++result.evaluations;
        if (v > best_value) {
          best_value = v;
          best = u;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  result.constants = from_logs(best);
  result.min_slack = best_value;
  result.feasible = best_value >= 0.0;
  result.certificate = check_constants(kind, result.constants, I, law, cc, strict_margin);
  char buf[320];
  const RegionConstants& c = result.constants;
  if (result.feasible) {
    std::snprintf(buf, sizeof buf,
                  "feasible: kind=%s I=%.10g L1=%.12g L2=%.12g U1=%.12g U2=%.12g min_slack=%.6g",
                  to_string(kind), I, c.L1, c.L2, c.U1, c.U2, best_value);
  } else {
    std::snprintf(buf, sizeof buf,
                  "infeasible: kind=%s I=%.10g best min_slack=%.6g < 0 at L1=%.6g L2=%.6g "
                  "U1=%.6g U2=%.6g over %zu points of the ratio box [1/4,4]^3",
                  to_string(kind), I, best_value, c.L1, c.L2, c.U1, c.U2, result.evaluations);
  }
  result.report = buf;
  return result;
}

}  // namespace nozzle
