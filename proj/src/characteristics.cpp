#include "nozzle/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "nozzle/errors.hpp"
#include "nozzle/riccati.hpp"

namespace nozzle {

History::History(const Trajectory& trajectory, const GasLaw& law,
                 std::shared_ptr<const NozzleProfile> profile)
    : traj_(trajectory), law_(law), profile_(std::move(profile)) {
  if (traj_.snapshots.size() < 2) throw ResolutionError("trajectory holds fewer than 2 snapshots");
  if (traj_.stride > 10)
    throw ResolutionError("history stride too coarse: snapshots every " +
                          std::to_string(traj_.stride) + " steps (gap > 10 dt)");
  if (traj_.n < 3) throw ResolutionError("trajectory grid has fewer than 3 cells");
  if (!profile_) throw ContractError("history needs the nozzle profile");
  for (const auto& s : traj_.snapshots) {
    for (std::size_t i = 0; i < traj_.n; ++i) {
      const double l1 = char_speeds_unchecked({s.z[i], s.w[i]}, law_).lambda1;
      inflow_speed_ = std::max(inflow_speed_, -l1);
    }
  }
}

double History::node_x(std::size_t j) const {
  return j == 0 ? 0.0 : (static_cast<double>(j) - 0.5) * traj_.dx;
}

double History::node_value(const Snapshot&, const std::vector<double>& u, double ub,
                           std::size_t j) const {
  return j == 0 ? ub : u[j - 1];
}

double History::node_slope(const Snapshot& s, const std::vector<double>& u, double ub,
                           std::size_t j) const {
  const std::size_t last = traj_.n;
  if (j == 0) return (u[0] - ub) / node_x(1);
  if (j == last) return (u[last - 1] - u[last - 2]) / traj_.dx;
  return (node_value(s, u, ub, j + 1) - node_value(s, u, ub, j - 1)) /
         (node_x(j + 1) - node_x(j - 1));
}

std::size_t History::locate_t(double t) const {
  const auto& snaps = traj_.snapshots;
  auto it = std::upper_bound(snaps.begin(), snaps.end(), t,
                             [](double v, const Snapshot& s) { return v < s.t; });
  std::size_t k = it == snaps.begin() ? 0 : static_cast<std::size_t>(it - snaps.begin()) - 1;
  return std::min(k, snaps.size() - 2);
}

std::size_t History::locate_x(double x) const {
  if (x <= node_x(1)) return 0;
  const auto j = static_cast<std::size_t>(std::floor(x / traj_.dx + 0.5));
  return std::clamp<std::size_t>(j, 1, traj_.n - 1);
}

History::Point History::at(double x, double t) const {
  const std::size_t k = locate_t(t);
  const std::size_t j = locate_x(x);
  const auto& s0 = traj_.snapshots[k];
  const auto& s1 = traj_.snapshots[k + 1];
  const double ht = s1.t - s0.t;
  const double ft = ht > 0.0 ? std::clamp((t - s0.t) / ht, 0.0, 1.0) : 0.0;
  const double fx = std::clamp((x - node_x(j)) / (node_x(j + 1) - node_x(j)), 0.0, 1.0);

  auto blend = [&](auto&& get) {
    const double v00 = get(s0, j), v01 = get(s0, j + 1);
    const double v10 = get(s1, j), v11 = get(s1, j + 1);
    return (1.0 - ft) * ((1.0 - fx) * v00 + fx * v01) + ft * ((1.0 - fx) * v10 + fx * v11);
  };
  Point p;
  p.z = blend([&](const Snapshot& s, std::size_t n) { return node_value(s, s.z, s.z_b, n); });
  p.w = blend([&](const Snapshot& s, std::size_t n) { return node_value(s, s.w, s.w_b, n); });
  p.z_x = blend([&](const Snapshot& s, std::size_t n) { return node_slope(s, s.z, s.z_b, n); });
  p.w_x = blend([&](const Snapshot& s, std::size_t n) { return node_slope(s, s.w, s.w_b, n); });
  return p;
}

CharSpeeds History::speeds(double x, double t) const {
  const auto p = at(x, t);
  return char_speeds_unchecked({p.z, p.w}, law_);
}

bool History::determined(double x, double t) const {
  return x <= traj_.x_max - inflow_speed_ * t + 1e-12;
}

namespace {

PathSample make_sample(const History& h, double x, double t, int family) {
  const auto p = h.at(x, t);
  const RiemannState r{p.z, p.w};
  const double a = h.profile().a(x);
  const double a_x = h.profile().a_prime(x);
  const auto coeffs = riccati_coeffs(r, a, a_x, h.law());
  const auto fp = phi_psi(r, p.z_x, p.w_x, a, h.law());
  const auto sp = char_speeds_unchecked(r, h.law());
  PathSample s{};
  s.t = t;
  s.x = x;
  s.z = p.z;
  s.w = p.w;
  s.z_x = p.z_x;
  s.w_x = p.w_x;
  s.a = a;
  s.a_x = a_x;
  if (family == 1) {
    s.lambda = sp.lambda1;
    s.F = fp.phi;
    s.G = fp.psi;
    s.A = coeffs.A;
    s.B = coeffs.B;
    s.C = coeffs.C;
  } else {
    s.lambda = sp.lambda2;
    s.F = fp.psi;
    s.G = fp.phi;
    s.A = coeffs.A_hat;
    s.B = coeffs.B_hat;
    s.C = coeffs.C_hat;
  }
  return s;
}

}  // namespace

CharPath trace(const History& h, double x0, int family, double t0) {
  if (family != 1 && family != 2) throw DomainError("family must be 1 or 2");
  if (!(x0 >= 0.0 && x0 <= h.x_max())) throw DomainError("launch point outside [0, x_max]");
  const auto& snaps = h.trajectory().snapshots;
  if (!(t0 >= snaps.front().t && t0 <= h.t_end())) throw DomainError("launch time outside run");

  CharPath path;
  path.family = family;
  path.x0 = x0;
  path.t0 = t0;
  path.exit_reason = "window end";
  path.exit_t = h.t_end();

  auto lam = [&](double x, double t) {
    const auto s = h.speeds(std::clamp(x, 0.0, h.x_max()), t);
    return family == 1 ? s.lambda1 : s.lambda2;
  };
  auto push = [&](double x, double t) {
    try {
      path.samples.push_back(make_sample(h, x, t, family));
      return true;
    } catch (const VacuumError&) {
      path.exit_reason = "vacuum";
      path.exit_t = t;
      path.exit_x = x;
      return false;
    }
  };

  double x = x0;
  double t = t0;
  if (!push(x, t)) return path;
  auto next = std::upper_bound(snaps.begin(), snaps.end(), t,
                               [](double v, const Snapshot& s) { return v < s.t; });
  for (; next != snaps.end(); ++next) {
    const double t1 = next->t;
    const double dt = t1 - t;
    if (!(dt > 0.0)) continue;
    const double k1 = lam(x, t);
    const double k2 = lam(x + 0.5 * dt * k1, t + 0.5 * dt);
    const double k3 = lam(x + 0.5 * dt * k2, t + 0.5 * dt);
    const double k4 = lam(x + dt * k3, t1);
    const double x1 = x + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    if (x1 < 0.0 || x1 > h.x_max()) {
      const double edge = x1 < 0.0 ? 0.0 : h.x_max();
      const double frac = (edge - x) / (x1 - x);
      path.exit_reason = x1 < 0.0 ? "left boundary" : "right boundary";
      path.exit_t = t + frac * dt;
      path.exit_x = edge;
      return path;
    }
    if (!h.determined(x1, t1)) {
      path.exit_reason = "truncation cone";
      path.exit_t = t1;
      path.exit_x = x1;
      return path;
    }
    x = x1;
    t = t1;
    if (!push(x, t)) return path;
  }
  path.exit_x = x;
  return path;
}

ResidualSeries riccati_residual(const CharPath& path, double dx, double x_max) {
  ResidualSeries out;
  const auto& s = path.samples;
  if (s.size() < 3) return out;
  auto inside = [&](double x) {
    if (!(dx > 0.0)) return true;
    return x >= 1.5 * dx && (x_max <= 0.0 || x <= x_max - 1.5 * dx);
  };
  for (std::size_t j = 1; j + 1 < s.size(); ++j) {
    if (!inside(s[j - 1].x) || !inside(s[j].x) || !inside(s[j + 1].x)) continue;
    const double span = s[j + 1].t - s[j - 1].t;
    if (!(span > 0.0)) continue;
    const double dF = (s[j + 1].F - s[j - 1].F) / span;
    const double r = dF - riccati_rhs(s[j].A, s[j].B, s[j].C, s[j].F);
    out.t.push_back(s[j].t);
    out.x.push_back(s[j].x);
    out.residual.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
    out.l1 += 0.5 * span * std::abs(r);
    if (path.family == 2) {
      const double rp = dF - (s[j].A * s[j].F * s[j].F + s[j].B * s[j].G + s[j].C);
      out.residual_printed.push_back(rp);
      out.max_abs_printed = std::max(out.max_abs_printed, std::abs(rp));
    }
  }
  return out;
}

BoundReport bound_check(const CharPath& path, Problem problem, double delta1, double M,
                        double alpha, const ResidualSeries* residual, double floor) {
  BoundReport rep;
  const auto& s = path.samples;
  if (s.empty()) return rep;

  ResidualSeries own;
  if (!residual) {
    own = riccati_residual(path);
    residual = &own;
  }
  const double defect = path.launch_exact ? std::abs(s.front().F - *path.launch_exact) : 0.0;
  std::vector<double> cum(residual->t.size() + 1, 0.0);
  for (std::size_t k = 0; k < residual->t.size(); ++k) {
    const double prev_t = k == 0 ? path.t0 : residual->t[k - 1];
    cum[k + 1] = cum[k] + (residual->t[k] - prev_t) * std::abs(residual->residual[k]);
  }
  auto tolerance_at = [&](double t) {
    const auto it = std::upper_bound(residual->t.begin(), residual->t.end(), t);
    const auto k = static_cast<std::size_t>(it - residual->t.begin());
    return 5.0 * (defect + cum[k]) + floor;
  };

  const int sign = barrier_sign(problem, path.family);
  std::vector<double> upper;
  try {
    std::vector<CoeffSample> series;
    series.reserve(s.size());
    for (const auto& p : s) series.push_back({p.t, p.A, p.B, p.C});
    upper = apriori_upper_bound(series, s.front().F);
  } catch (const ContractError& e) {
    rep.contract_failure = e.what();
  }

  const double inf = std::numeric_limits<double>::infinity();
  double worst_lower = inf, worst_upper = inf;
  rep.subsolution.value = inf;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& p = s[k];
    const double tol = tolerance_at(p.t);
    const double b = barrier_value(p.x, delta1, M, alpha, sign);
    const double lower = p.F - b;
    if (lower + tol < worst_lower) {
      worst_lower = lower + tol;
      rep.lower = {lower, p.t, p.x, tol, lower + tol >= 0.0};
    }
    if (!upper.empty()) {
      const double up = upper[k] - p.F;
      rep.max_integral = std::max(rep.max_integral, upper[k] - s.front().F);
      if (up + tol < worst_upper) {
        worst_upper = up + tol;
        rep.upper = {up, p.t, p.x, tol, up + tol >= 0.0};
      }
    }
    const double lhs = barrier_rate(p.x, p.lambda, delta1, M, alpha, sign) -
                       riccati_rhs(p.A, p.B, p.C, b);
    if (-lhs < rep.subsolution.value) rep.subsolution = {-lhs, p.t, p.x, 0.0, -lhs >= 0.0};
  }
  if (upper.empty()) rep.upper.pass = false;
  return rep;
}

std::vector<CharPath> fan(const History& history, int family, const FanOptions& options) {
  const double xi = history.trajectory().x_interest;
  const double T = history.t_end();
  struct Launch {
    double x0;
    double t0;
  };
  std::vector<Launch> launches;
  for (std::size_t k = 0; k < options.count; ++k)
    launches.push_back({(static_cast<double>(k) + 0.5) * xi / static_cast<double>(options.count), 0.0});
  if (options.include_boundary) {
    for (std::size_t k = 0; k < options.count; ++k)
      launches.push_back({0.0, (static_cast<double>(k) + 0.5) * T / static_cast<double>(options.count)});
  }
  std::vector<std::future<CharPath>> jobs;
  jobs.reserve(launches.size());
  for (const auto& l : launches)
    jobs.push_back(std::async(std::launch::async,
                              [&history, l, family] { return trace(history, l.x0, family, l.t0); }));
  std::vector<CharPath> paths;
  paths.reserve(jobs.size());
  for (auto& j : jobs) paths.push_back(j.get());
  return paths;
}

}  // namespace nozzle
