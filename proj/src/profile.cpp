#include "nozzle/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

constexpr double kQuadTolerance = 1e-10;
constexpr int kMaxCacheLevels = 16;

double simpson(double f0, double fm, double f1, double h) { return h * (f0 + 4.0 * fm + f1) / 6.0; }

}  // namespace

const char* to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Zero:
      return "zero";
    case ProfileFamily::Power:
      return "power";
    case ProfileFamily::Exponential:
      return "exp";
    case ProfileFamily::Oscillating:
      return "oscillating";
    case ProfileFamily::Table:
      return "table";
  }
  return "?";
}

ProfileFamily parse_profile_family(const std::string& text) {
  if (text == "zero") return ProfileFamily::Zero;
  if (text == "power") return ProfileFamily::Power;
  if (text == "exp" || text == "exponential") return ProfileFamily::Exponential;
  if (text == "oscillating") return ProfileFamily::Oscillating;
  if (text == "table") return ProfileFamily::Table;
  throw DomainError("unknown profile family '" + text + "'");
}

NozzleProfile::NozzleProfile(ProfileParams params, double l, double cache_length)
    : params_(std::move(params)) {
  if (!(l > 0.0)) throw DomainError("critical constant l must be positive");
  if (!(params_.margin > 1.0) && params_.family != ProfileFamily::Zero) {
    throw DomainError("majorant margin must exceed 1");
  }
  const DecayConstants& d = params_.decay;
  if (!(d.k1 > 0.0 && d.k2 > 0.0 && d.alpha > 0.0 && d.M > 0.0)) {
    throw DomainError("decay constants k1, k2, alpha, M must be positive");
  }
  const double amp = std::abs(params_.amp);
  abar_scale_ = params_.margin * amp / l;
  switch (params_.family) {
    case ProfileFamily::Zero:
      if (!(params_.eps > 0.0)) throw DomainError("zero profile needs eps > 0");
      abar_scale_ = params_.eps;
      I_total_ = params_.eps;
      break;
    case ProfileFamily::Power:
    case ProfileFamily::Oscillating:
      if (!(params_.rate > 0.0)) throw DomainError("profile rate must be positive");
      if (params_.power > 1.0) {
        I_total_ = abar_scale_ / (params_.rate * (params_.power - 1.0));
      } else {
        I_total_ = std::numeric_limits<double>::infinity();
        conditional_ = true;
      }
      break;
    case ProfileFamily::Exponential:
      if (!(params_.rate > 0.0)) throw DomainError("profile rate must be positive");
      I_total_ = abar_scale_ / params_.rate;
      break;
    case ProfileFamily::Table:
      build_table_family(l);
      break;
  }
  build_cache(cache_length);
}

void NozzleProfile::build_table_family(double l) {
  const auto& xs = params_.table_x;
  const auto& as = params_.table_a;
  if (xs.size() < 2 || xs.size() != as.size()) {
    throw DomainError("table profile needs at least two (x, a) rows");
  }
  if (xs.front() != 0.0) throw DomainError("table profile must start at x = 0");
  if (params_.envelope_window < 1) throw DomainError("envelope window must be at least 1");
  table_a_ = CubicHermite::monotone(xs, as);
  const std::size_t n = xs.size();
  const std::size_t win = static_cast<std::size_t>(params_.envelope_window);
  std::vector<double> env(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= win ? i - win : 0;
    const std::size_t hi = std::min(n - 1, i + win);
    double m = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) m = std::max(m, std::abs(as[j]));
    env[i] = params_.margin * m / l;
  }
  table_abar_ = CubicHermite::monotone(xs, env);
  // eps e^(-x) keeps the majorant strictly positive where the table vanishes.
  I_total_ = table_abar_.integral_to(xs.back()) + params_.eps * (1.0 - std::exp(-xs.back()));
  if (params_.tail_bound) {
    if (*params_.tail_bound < 0.0) throw DomainError("tail bound must be nonnegative");
    I_total_ += *params_.tail_bound + params_.eps * std::exp(-xs.back());
  } else {
    conditional_ = true;
  }
}

double NozzleProfile::a(double x) const {
  const ProfileParams& p = params_;
  switch (p.family) {
    case ProfileFamily::Zero:
      return 0.0;
    case ProfileFamily::Power:
      return p.amp * std::pow(1.0 + p.rate * x, -p.power);
    case ProfileFamily::Exponential:
      return p.amp * std::exp(-p.rate * x);
    case ProfileFamily::Oscillating:
      return p.amp * std::sin(p.freq * x) * std::pow(1.0 + p.rate * x, -p.power);
    case ProfileFamily::Table:
      return table_a_.value(x);
  }
  return 0.0;
}

double NozzleProfile::a_prime(double x) const {
  const ProfileParams& p = params_;
  switch (p.family) {
    case ProfileFamily::Zero:
      return 0.0;
    case ProfileFamily::Power:
      return -p.amp * p.power * p.rate * std::pow(1.0 + p.rate * x, -p.power - 1.0);
    case ProfileFamily::Exponential:
      return -p.amp * p.rate * std::exp(-p.rate * x);
    case ProfileFamily::Oscillating: {
      const double s = 1.0 + p.rate * x;
      return p.amp * (p.freq * std::cos(p.freq * x) * std::pow(s, -p.power) -
                      p.power * p.rate * std::sin(p.freq * x) * std::pow(s, -p.power - 1.0));
    }
    case ProfileFamily::Table:
      return table_a_.slope(x);
  }
  return 0.0;
}

double NozzleProfile::abar(double x) const {
  const ProfileParams& p = params_;
  switch (p.family) {
    case ProfileFamily::Zero:
      return abar_scale_ * std::exp(-x);
    case ProfileFamily::Power:
    case ProfileFamily::Oscillating:
      return abar_scale_ * std::pow(1.0 + p.rate * x, -p.power);
    case ProfileFamily::Exponential:
      return abar_scale_ * std::exp(-p.rate * x);
    case ProfileFamily::Table:
      return table_abar_.value(x) + p.eps * std::exp(-x);
  }
  return 0.0;
}

void NozzleProfile::build_cache(double cache_length) {
  if (!(cache_length > 0.0)) throw DomainError("cache length must be positive");
  auto cache = std::make_shared<Cache>();
  // Trapezoid sums at h and h/2 give the Richardson (Simpson) panel value and an error estimate.
  std::size_t panels = 64;
  const double tol = kQuadTolerance * (1.0 + (std::isfinite(I_total_) ? I_total_ : 0.0));
  for (int level = 0;; ++level) {
    const double h = cache_length / static_cast<double>(panels);
    std::vector<double> cumulative(panels + 1, 0.0);
    double error = 0.0;
    double f0 = abar(0.0);
    for (std::size_t j = 0; j < panels; ++j) {
      const double x0 = h * static_cast<double>(j);
      const double fm = abar(x0 + 0.5 * h);
      const double f1 = abar(x0 + h);
      const double t_h = 0.5 * h * (f0 + f1);
      const double t_half = 0.25 * h * (f0 + 2.0 * fm + f1);
      error += std::abs(t_half - t_h) / 3.0;
      cumulative[j + 1] = cumulative[j] + simpson(f0, fm, f1, h);
      f0 = f1;
    }
    if (error < tol || level == kMaxCacheLevels) {
      cache->h = h;
      cache->cumulative = std::move(cumulative);
      h_ = h;
      quad_error_ = error;
      break;
    }
    panels *= 2;
  }
  cache_ = std::move(cache);
}

double NozzleProfile::integrate_abar(double x0, double x1) const {
  // Fixed fine Simpson rule on the segment (used only beyond the cached range).
  if (x1 <= x0) return 0.0;
  const std::size_t n =
      std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil((x1 - x0) / h_)));
  const double h = (x1 - x0) / static_cast<double>(n);
  double sum = 0.0;
  double f0 = abar(x0);
  for (std::size_t j = 0; j < n; ++j) {
    const double a0 = x0 + h * static_cast<double>(j);
    const double f1 = abar(a0 + h);
    sum += simpson(f0, abar(a0 + 0.5 * h), f1, h);
    f0 = f1;
  }
  return sum;
}

double NozzleProfile::cum_abar(double x) const {
  if (x < 0.0 || std::isnan(x)) throw DomainError("cumulative integral requested at x < 0");
  if (x == 0.0) return 0.0;
  const Cache& c = *cache_;
  const std::size_t panels = c.cumulative.size() - 1;
  const double end = c.h * static_cast<double>(panels);
  double value;
  if (x >= end) {
    value = c.cumulative.back() + integrate_abar(end, x);
  } else {
    const std::size_t j = std::min(panels - 1, static_cast<std::size_t>(x / c.h));
    const double x0 = c.h * static_cast<double>(j);
    const double part = simpson(abar(x0), abar(0.5 * (x0 + x)), abar(x), x - x0);
    value = std::min(c.cumulative[j] + part, c.cumulative[j + 1]);
  }
  return std::min(value, I_total_);
}

NozzleProfile NozzleProfile::with_decay(const DecayConstants& decay) const {
  if (!(decay.k1 > 0.0 && decay.k2 > 0.0 && decay.alpha > 0.0 && decay.M > 0.0)) {
    throw DomainError("decay constants k1, k2, alpha, M must be positive");
  }
  NozzleProfile copy = *this;
  copy.params_.decay = decay;
  return copy;
}

std::string NozzleProfile::describe() const {
  std::ostringstream os;
  os.precision(10);
  const ProfileParams& p = params_;
  switch (p.family) {
    case ProfileFamily::Zero:
      os << "a=0, abar=" << p.eps << "*exp(-x)";
      break;
    case ProfileFamily::Power:
      os << "a=" << p.amp << "*(1+" << p.rate << "x)^-" << p.power;
      break;
    case ProfileFamily::Exponential:
      os << "a=" << p.amp << "*exp(-" << p.rate << "x)";
      break;
    case ProfileFamily::Oscillating:
      os << "a=" << p.amp << "*sin(" << p.freq << "x)*(1+" << p.rate << "x)^-" << p.power;
      break;
    case ProfileFamily::Table:
      os << "table with " << p.table_x.size() << " rows";
      break;
  }
  os << ", I=" << I_total_ << (conditional_ ? " (conditional)" : "");
  return os.str();
}

}  // namespace nozzle
