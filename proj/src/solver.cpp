#include "nozzle/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

constexpr std::size_t kGhosts = 2;

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double fallback_speed(const Scenario& sc) {
  double speed = 0.0;
  const std::size_t samples = 512;
  for (std::size_t k = 0; k <= samples; ++k) {
    const double x = sc.options.x_interest * static_cast<double>(k) / samples;
    const auto d = sc.initial.at(x);
    const auto s = char_speeds_unchecked({d.z, d.w}, sc.law);
    speed = std::max({speed, std::abs(s.lambda1), std::abs(s.lambda2)});
  }
  if (sc.boundary) {
    const auto b = sc.boundary->at(0.0);
    const auto s = char_speeds_unchecked({b.z, b.w}, sc.law);
    speed = std::max({speed, std::abs(s.lambda1), std::abs(s.lambda2)});
  }
  return 1.25 * speed;
}

}  // namespace

Grid Grid::make(std::size_t n, double x_interest, double x_max) {
  if (n < 4) throw ConfigError("grid needs at least 4 cells");
  if (!(x_max > 0.0) || !(x_interest > 0.0) || x_interest > x_max)
    throw ConfigError("need 0 < x_interest <= x_max");
  Grid g;
  g.n = n;
  g.x_interest = x_interest;
  g.x_max = x_max;
  g.dx = x_max / static_cast<double>(n);
  std::size_t window = 0;
  while (window < n && g.x(window) <= x_interest) ++window;
  g.window = std::max<std::size_t>(window, 1);
  return g;
}

double cfl_dt(const Field& field, const GasLaw& law, double cfl, double dx, double t_end) {
  double speed = 0.0;
  for (std::size_t i = 0; i < field.z.size(); ++i) {
    const auto s = char_speeds_unchecked({field.z[i], field.w[i]}, law);
    speed = std::max({speed, std::abs(s.lambda1), std::abs(s.lambda2)});
  }
  if (!(speed > 0.0) || !std::isfinite(speed))
    throw DomainError("cannot choose a time step: characteristic speeds are all zero or non-finite");
  double dt = cfl * dx / speed;
  const double remaining = t_end - field.t;
  if (dt >= remaining - 1e-12 * std::max(1.0, std::abs(t_end))) dt = remaining;
  return std::max(dt, 0.0);
}

Solver::Solver(Scenario scenario) : scenario_(std::move(scenario)) {
  const auto& opt = scenario_.options;
  if (opt.order != 1 && opt.order != 2) throw ConfigError("order must be 1 or 2");
  if (!(opt.cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (!(opt.T >= 0.0)) throw ConfigError("T must be nonnegative");
  if (opt.snapshot_stride == 0) throw ConfigError("snapshot stride must be positive");
  if (!scenario_.spec.profile) throw ConfigError("scenario has no nozzle profile");
  if (scenario_.problem == Problem::P2 && !scenario_.boundary)
    throw ConfigError("P2 needs boundary data");
  if (scenario_.problem != Problem::P2 && scenario_.boundary)
    throw ConfigError(std::string(to_string(scenario_.problem)) + " takes no boundary data");

  try {
    speed_bound_ = region_speed_bounds(scenario_.spec, scenario_.law).speed_max;
  } catch (const ContractError&) {
    speed_bound_ = fallback_speed(scenario_);
  }
  const double x_max =
      opt.x_max > 0.0 ? opt.x_max : opt.x_interest + speed_bound_ * opt.T;
  grid_ = Grid::make(opt.n, opt.x_interest, x_max);

  const auto& profile = *scenario_.spec.profile;
  a_.resize(grid_.n);
  s_.resize(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) {
    a_[i] = profile.a(grid_.x(i));
    s_[i] = profile.cum_abar(grid_.x(i));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const auto d = scenario_.initial.at(grid_.x(grid_.n + k));
    right_z_[k] = d.z;
    right_w_[k] = d.w;
  }
}

Field Solver::initial_field() const {
  Field f;
  f.t = 0.0;
  f.z.resize(grid_.n);
  f.w.resize(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) {
    const auto d = scenario_.initial.at(grid_.x(i));
    f.z[i] = d.z;
    f.w[i] = d.w;
  }
  update_trace(f);
  return f;
}

double Solver::cfl_dt(const Field& field) const {
  return nozzle::cfl_dt(field, scenario_.law, scenario_.options.cfl, grid_.dx,
                        scenario_.options.T);
}

void Solver::update_trace(Field& f) const {
  switch (scenario_.problem) {
    case Problem::P1: {
      f.z_b = 0.5 * (f.z[0] - f.w[0]);
      f.w_b = -f.z_b;
      const auto s = char_speeds_unchecked({f.z_b, f.w_b}, scenario_.law);
      if (!(s.lambda1 < 0.0 && 0.0 < s.lambda2))
        throw SonicBoundaryError("wall state is not subsonic at t=" + std::to_string(f.t));
      break;
    }
    case Problem::P2: {
      const auto b = scenario_.boundary->at(f.t);
      f.z_b = b.z;
      f.w_b = b.w;
      break;
    }
    case Problem::P3:
      f.z_b = 1.5 * f.z[0] - 0.5 * f.z[1];
      f.w_b = 1.5 * f.w[0] - 0.5 * f.w[1];
      break;
  }
}

void Solver::fill_ghosts(std::vector<double>& Z, std::vector<double>& W, double t) const {
  const std::size_t n = grid_.n;
  for (std::size_t k = 0; k < kGhosts; ++k) {
    const std::size_t g = kGhosts - 1 - k;  // ghost k sits at -(k + 1/2) dx
    switch (scenario_.problem) {
      case Problem::P1:
        Z[g] = -W[kGhosts + k];
        W[g] = -Z[kGhosts + k];
        break;
      case Problem::P2: {
        const auto b = scenario_.boundary->at(t);
        const auto s = char_speeds_unchecked({b.z, b.w}, scenario_.law);
        if (!(s.lambda1 > 0.0))
          throw SonicBoundaryError("boundary state is not supersonic at t=" + std::to_string(t));
        const double S = source_rhs({b.z, b.w}, scenario_.spec.profile->a(0.0), scenario_.law).dz_dt;
        const double d = (static_cast<double>(k) + 0.5) * grid_.dx;
        Z[g] = scenario_.boundary->at(t + d / s.lambda1).z - S * d / s.lambda1;
        W[g] = scenario_.boundary->at(t + d / s.lambda2).w + S * d / s.lambda2;
        break;
      }
      case Problem::P3:
        Z[g] = Z[kGhosts];
        W[g] = W[kGhosts];
        break;
    }
    Z[kGhosts + n + k] = right_z_[k];
    W[kGhosts + n + k] = right_w_[k];
  }
}

void Solver::rhs(const std::vector<double>& Z, const std::vector<double>& W,
                 std::vector<double>& dZ, std::vector<double>& dW) const {
  const std::size_t m = Z.size();
  std::vector<double> l1(m), l2(m), sz(m, 0.0), sw(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto s = char_speeds_unchecked({Z[j], W[j]}, scenario_.law);
    l1[j] = s.lambda1;
    l2[j] = s.lambda2;
  }
  if (scenario_.options.order == 2) {
    for (std::size_t j = 1; j + 1 < m; ++j) {
      sz[j] = minmod(Z[j] - Z[j - 1], Z[j + 1] - Z[j]);
      sw[j] = minmod(W[j] - W[j - 1], W[j + 1] - W[j]);
    }
  }
  const double inv_dx = 1.0 / grid_.dx;
  const double w_sign = scenario_.options.mutate_w_source ? 1.0 : -1.0;
  for (std::size_t i = 0; i < grid_.n; ++i) {
    const std::size_t j = i + kGhosts;
    auto advect = [&](const std::vector<double>& U, const std::vector<double>& sl,
                      const std::vector<double>& lam) {
      const double jump_l = (U[j] - 0.5 * sl[j]) - (U[j - 1] + 0.5 * sl[j - 1]);
      const double jump_r = (U[j + 1] - 0.5 * sl[j + 1]) - (U[j] + 0.5 * sl[j]);
      const double face_l = 0.5 * (lam[j - 1] + lam[j]);
      const double face_r = 0.5 * (lam[j] + lam[j + 1]);
      return -inv_dx * (std::max(face_l, 0.0) * jump_l + std::min(face_r, 0.0) * jump_r +
                        lam[j] * sl[j]);
    };
    const double S = source_rhs({Z[j], W[j]}, a_[i], scenario_.law).dz_dt;
    dZ[i] = advect(Z, sz, l1) + S;
    dW[i] = advect(W, sw, l2) + w_sign * S;
  }
}

void Solver::step(Field& f, double dt) const {
  const std::size_t n = grid_.n;
  const std::size_t m = n + 2 * kGhosts;
  std::vector<double> Z(m), W(m), dZ(n), dW(n);
  std::copy(f.z.begin(), f.z.end(), Z.begin() + kGhosts);
  std::copy(f.w.begin(), f.w.end(), W.begin() + kGhosts);
  fill_ghosts(Z, W, f.t);
  rhs(Z, W, dZ, dW);

  if (scenario_.options.order == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      f.z[i] += dt * dZ[i];
      f.w[i] += dt * dW[i];
    }
  } else {
    std::vector<double> dZ2(n), dW2(n);
    for (std::size_t i = 0; i < n; ++i) {
      Z[i + kGhosts] = f.z[i] + dt * dZ[i];
      W[i + kGhosts] = f.w[i] + dt * dW[i];
    }
    fill_ghosts(Z, W, f.t + dt);
    rhs(Z, W, dZ2, dW2);
    for (std::size_t i = 0; i < n; ++i) {
      f.z[i] += 0.5 * dt * (dZ[i] + dZ2[i]);
      f.w[i] += 0.5 * dt * (dW[i] + dW2[i]);
    }
  }
  f.t += dt;

  const double limit = scenario_.options.blowup_threshold;
  for (std::size_t i = 0; i < n; ++i) {
    const bool bad = !std::isfinite(f.z[i]) || !std::isfinite(f.w[i]) ||
                     std::abs(f.z[i]) > limit || std::abs(f.w[i]) > limit;
    if (bad) {
      std::ostringstream os;
      os << "blow-up in cell " << i << " at x=" << grid_.x(i) << ", t=" << f.t;
      throw BlowUpError(os.str(), i, grid_.x(i), f.t);
    }
  }
  update_trace(f);
}

RunResult run(const Scenario& scenario, const StepObserver& observer,
              const std::string& config_text) {
  const Solver solver(scenario);
  return run(solver, observer, config_text);
}

RunResult run(const Solver& solver, const StepObserver& observer,
              const std::string& config_text) {
  const auto& scenario = solver.scenario();
  const auto& g = solver.grid();
  const auto& opt = scenario.options;

  RunResult result;
  auto& traj = result.trajectory;
  traj.problem = scenario.problem;
  traj.n = g.n;
  traj.dx = g.dx;
  traj.x_interest = g.x_interest;
  traj.x_max = g.x_max;
  traj.stride = opt.snapshot_stride;
  traj.config_text = config_text;

  auto store = [&traj](const Field& f) {
    traj.snapshots.push_back({f.t, f.z_b, f.w_b, f.z, f.w});
  };

  Field f = solver.initial_field();
  store(f);
  if (observer) observer(f, 0, 0.0);
  bool stored_last = true;
  while (f.t < opt.T) {
    const double dt = solver.cfl_dt(f);
    if (!(dt > 0.0)) break;
    try {
      solver.step(f, dt);
    } catch (const BlowUpError& e) {
      result.blow_up = BlowUpInfo{e.what(), e.cell(), e.x(), e.t()};
      break;
    }
    ++result.steps;
    stored_last = result.steps % opt.snapshot_stride == 0;
    if (stored_last) store(f);
    if (observer) observer(f, result.steps, dt);
  }
  if (!stored_last && !result.blow_up) store(f);
  result.final_field = std::move(f);
  return result;
}

}  // namespace nozzle
