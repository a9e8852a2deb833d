#include "nozzle/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "nozzle/errors.hpp"
#include "nozzle/report.hpp"
#include "nozzle/riccati.hpp"

namespace nozzle {

namespace {

constexpr std::size_t kMaxViolations = 20;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> data_grid(const ScenarioConfig& cfg) {
  const auto& m = cfg.monitors;
  auto fine = sample_grid(std::min(m.hypothesis_x_max, 4.0 * cfg.scenario.options.x_interest),
                          m.data_samples);
  auto coarse = sample_grid(m.hypothesis_x_max, m.data_samples);
  fine.insert(fine.end(), coarse.begin(), coarse.end());
  std::sort(fine.begin(), fine.end());
  fine.erase(std::unique(fine.begin(), fine.end()), fine.end());
  return fine;
}

Certificate membership_certificate(const ScenarioConfig& cfg, std::span<const double> grid) {
  const auto& sc = cfg.scenario;
  Certificate cert("initial data in region");
  const char* faces[] = {"z_lo <= z0(x)", "z0(x) <= z_hi", "w_lo <= w0(x)", "w0(x) <= w_hi"};
  std::size_t idx[4];
  for (int k = 0; k < 4; ++k) idx[k] = cert.begin_pointwise(faces[k]);
  for (double x : grid) {
    const auto d = sc.initial.at(x);
    const auto e = envelope(sc.spec.kind, sc.spec.c, sc.spec.profile->cum_abar(x));
    const std::string where = "x=" + fmt(x);
    cert.sample(idx[0], e.z_lo, d.z, where);
    cert.sample(idx[1], d.z, e.z_hi, where);
    cert.sample(idx[2], e.w_lo, d.w, where);
    cert.sample(idx[3], d.w, e.w_hi, where);
  }
  if (sc.boundary) {
    const auto e = envelope(sc.spec.kind, sc.spec.c, 0.0);
    const char* bfaces[] = {"z_lo <= zB(t)", "zB(t) <= z_hi", "w_lo <= wB(t)", "wB(t) <= w_hi"};
    std::size_t b[4];
    for (int k = 0; k < 4; ++k) b[k] = cert.begin_pointwise(bfaces[k]);
    const std::size_t n = 201;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = sc.options.T * static_cast<double>(k) / static_cast<double>(n - 1);
      const auto d = sc.boundary->at(t);
      const std::string where = "t=" + fmt(t);
      cert.sample(b[0], e.z_lo, d.z, where);
      cert.sample(b[1], d.z, e.z_hi, where);
      cert.sample(b[2], e.w_lo, d.w, where);
      cert.sample(b[3], d.w, e.w_hi, where);
    }
  }
  return cert;
}

double slope_at(const std::vector<double>& u, double ub, std::size_t i, double dx) {
  const std::size_t n = u.size();
  if (i == 0) return (u[1] - ub) / (1.5 * dx);
  if (i + 1 >= n) return (u[n - 1] - u[n - 2]) / dx;
  return (u[i + 1] - u[i - 1]) / (2.0 * dx);
}

void note_violation(MonitorReport& r, std::string text) {
  if (r.violations.size() < kMaxViolations) r.violations.push_back(std::move(text));
}

}  // namespace

double cell_slope(const std::vector<double>& u, double u_b, std::size_t i, double dx) {
  return slope_at(u, u_b, i, dx);
}

bool CertBundle::pass() const {
  return std::all_of(parts.begin(), parts.end(), [](const Certificate& c) { return c.pass(); });
}

bool CertBundle::conditional() const {
  return std::any_of(parts.begin(), parts.end(),
                     [](const Certificate& c) { return c.conditional(); });
}

std::string CertBundle::text() const {
  std::string out;
  for (const auto& c : parts) out += c.text();
  return out;
}

CertBundle certify(const ScenarioConfig& cfg) {
  const auto& sc = cfg.scenario;
  const auto& profile = *sc.spec.profile;
  const auto cc = critical_constants(sc.law);
  CertBundle bundle;

  const auto h_grid = sample_grid(cfg.monitors.hypothesis_x_max, cfg.monitors.hypothesis_samples);
  bundle.parts.push_back(check_H1(profile, h_grid));
  HypothesisOptions ho;
  ho.strict_margin = cfg.monitors.strict_margin;
  ho.x_max = cfg.monitors.hypothesis_x_max;
  ho.samples = cfg.monitors.hypothesis_samples;
  bundle.parts.push_back(check_hypothesis(sc.spec, sc.law, cc, ho));

  const auto grid = data_grid(cfg);
  bundle.parts.push_back(membership_certificate(cfg, grid));

  DataSamples ds;
  for (double x : grid) {
    const auto d = sc.initial.at(x);
    ds.x.push_back(x);
    ds.z.push_back(d.z);
    ds.w.push_back(d.w);
    ds.z_x.push_back(d.z_x);
    ds.w_x.push_back(d.w_x);
    ds.a.push_back(profile.a(x));
  }
  BoundarySamples bs;
  if (sc.boundary) {
    bs.a0 = profile.a(0.0);
    const std::size_t n = 201;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = sc.options.T * static_cast<double>(k) / static_cast<double>(n - 1);
      const auto b = sc.boundary->at(t);
      bs.t.push_back(t);
      bs.z.push_back(b.z);
      bs.w.push_back(b.w);
      bs.z_t.push_back(b.z_t);
      bs.w_t.push_back(b.w_t);
    }
  }
  try {
    bundle.parts.push_back(check_data_conditions(sc.problem, ds, sc.boundary ? &bs : nullptr,
                                                 cfg.bounds, sc.law));
  } catch (const Error& e) {
    Certificate c("data conditions");
    c.check(std::string("data conditions evaluable (") + e.what() + ")", 1.0, 0.0);
    bundle.parts.push_back(std::move(c));
  }

  const auto d0 = sc.initial.at(0.0);
  const OriginTrace origin{d0.z, d0.w, d0.z_x, d0.w_x};
  std::optional<BoundaryTrace> bt;
  if (sc.boundary) {
    const auto b = sc.boundary->at(0.0);
    bt = BoundaryTrace{b.z, b.w, b.z_t, b.w_t};
  }
  try {
    bundle.parts.push_back(check_compatibility(sc.problem, origin, bt ? &*bt : nullptr,
                                               profile.a(0.0), sc.law,
                                               cfg.monitors.compatibility_tol));
  } catch (const Error& e) {
    Certificate c("compatibility");
    c.check(std::string("compatibility evaluable (") + e.what() + ")", 1.0, 0.0);
    bundle.parts.push_back(std::move(c));
  }
  return bundle;
}

ConservationNorms conservation_residual(const Snapshot& prev, const Snapshot& mid,
                                        const Snapshot& next, double dx, std::size_t cells,
                                        const GasLaw& law, const NozzleProfile& profile) {
  const double th = law.theta();
  auto prim = [&](double z, double w) {
    const double v = 0.5 * (w + z);
    const double rho = std::pow(std::max(0.0, 0.5 * th * (w - z)), 1.0 / th);
    return std::pair{rho, v};
  };
  ConservationNorms out;
  out.t = mid.t;
  const double span = next.t - prev.t;
  if (!(span > 0.0) || cells < 3) return out;
  auto flux_m = [&](const Snapshot& s, std::size_t i) {
    const auto [rho, v] = prim(s.z[i], s.w[i]);
    return rho * v;
  };
  auto flux_p = [&](const Snapshot& s, std::size_t i) {
    const auto [rho, v] = prim(s.z[i], s.w[i]);
    return rho * v * v + pressure(rho, law);
  };
  for (std::size_t i = 1; i + 1 < cells; ++i) {
    const auto [r0, v0] = prim(prev.z[i], prev.w[i]);
    const auto [r2, v2] = prim(next.z[i], next.w[i]);
    const auto [r1, v1] = prim(mid.z[i], mid.w[i]);
    const double a = profile.a((static_cast<double>(i) + 0.5) * dx);
    const double mass = (r2 - r0) / span + (flux_m(mid, i + 1) - flux_m(mid, i - 1)) / (2.0 * dx) +
                        a * r1 * v1;
    const double mom = (r2 * v2 - r0 * v0) / span +
                       (flux_p(mid, i + 1) - flux_p(mid, i - 1)) / (2.0 * dx) + a * r1 * v1 * v1;
    out.mass_linf = std::max(out.mass_linf, std::abs(mass));
    out.momentum_linf = std::max(out.momentum_linf, std::abs(mom));
    out.mass_l1 += std::abs(mass) * dx;
    out.momentum_l1 += std::abs(mom) * dx;
  }
  return out;
}

std::vector<ConservationNorms> conservative_residual(const Trajectory& traj, const GasLaw& law,
                                                     const NozzleProfile& profile) {
  if (traj.stride != 1) throw ResolutionError("conservative residual needs snapshot stride 1");
  std::size_t window = 0;
  while (window < traj.n && traj.x(window) <= traj.x_interest) ++window;
  const std::size_t cells = std::min(traj.n, window + 1);
  std::vector<ConservationNorms> out;
  for (std::size_t k = 1; k + 1 < traj.snapshots.size(); ++k)
    out.push_back(conservation_residual(traj.snapshots[k - 1], traj.snapshots[k],
                                        traj.snapshots[k + 1], traj.dx, cells, law, profile));
  return out;
}

Monitor::Monitor(const Solver& solver, const ScenarioConfig& config)
    : solver_(solver), config_(config) {
  try {
    C3_ = region_speed_bounds(solver.scenario().spec, solver.scenario().law).C3;
  } catch (const ContractError&) {
    C3_ = kVacuumGap;
  }
  report_.min_margin_raw = kInf;
  report_.min_margin_adjusted = kInf;
  report_.min_gap = kInf;
  report_.gap_required = -kInf;
  report_.phi_min = report_.psi_min = kInf;
  report_.phi_max = report_.psi_max = -kInf;
}

void Monitor::observe(const Field& f, std::size_t step, double) {
  const auto& sc = solver_.scenario();
  const auto& g = solver_.grid();
  const auto& law = sc.law;
  const auto& a = solver_.a_cells();
  const auto& s = solver_.s_cells();
  const std::size_t window = g.window;
  auto& rep = report_;

  StepRecord rec;
  rec.step = step;
  rec.t = f.t;
  rec.margin_raw = kInf;
  rec.min_gap = kInf;
  rec.phi_min = rec.psi_min = kInf;
  rec.phi_max = rec.psi_max = -kInf;

  double lip = 0.0;
  const std::size_t lip_end = std::min(window + 1, g.n);
  for (std::size_t i = 0; i + 1 < lip_end; ++i)
    lip = std::max({lip, std::abs(f.z[i + 1] - f.z[i]) / g.dx,
                    std::abs(f.w[i + 1] - f.w[i]) / g.dx});
  rec.margin_tol = config_.monitors.lip_factor * g.dx * lip;

  for (std::size_t i = 0; i < window; ++i) {
    const RiemannState r{f.z[i], f.w[i]};
    const auto m = membership_at(r, s[i], sc.spec.kind, sc.spec.c);
    const double faces[] = {m.z_lo, m.z_hi, m.w_lo, m.w_hi};
    const char* names[] = {"z_lo", "z_hi", "w_lo", "w_hi"};
    for (int k = 0; k < 4; ++k) {
      if (faces[k] < rec.margin_raw) {
        rec.margin_raw = faces[k];
        rec.margin_cell = i;
        rec.margin_face = names[k];
      }
    }
    rec.min_gap = std::min(rec.min_gap, r.gap());

    const double z_x = slope_at(f.z, f.z_b, i, g.dx);
    const double w_x = slope_at(f.w, f.w_b, i, g.dx);
    const auto sp = char_speeds_unchecked(r, law);
    const double S = source_rhs(r, a[i], law).dz_dt;
    rec.max_z_x = std::max(rec.max_z_x, std::abs(z_x));
    rec.max_w_x = std::max(rec.max_w_x, std::abs(w_x));
    rec.max_z_t = std::max(rec.max_z_t, std::abs(-sp.lambda1 * z_x + S));
    rec.max_w_t = std::max(rec.max_w_t, std::abs(-sp.lambda2 * w_x - S));
    if (r.gap() > kVacuumGap) {
      const auto parts = functional_parts(r, a[i], law);
      const double phi = parts.scale * z_x + parts.phi_offset;
      const double psi = parts.scale * w_x + parts.psi_offset;
      rec.phi_min = std::min(rec.phi_min, phi);
      rec.phi_max = std::max(rec.phi_max, phi);
      rec.psi_min = std::min(rec.psi_min, psi);
      rec.psi_max = std::max(rec.psi_max, psi);
      rep.phi_offset_max = std::max(rep.phi_offset_max, std::abs(parts.phi_offset));
      rep.psi_offset_max = std::max(rep.psi_offset_max, std::abs(parts.psi_offset));
    }
  }
  if (sc.problem == Problem::P1) rec.wall = std::abs(f.w_b + f.z_b);

  if (rec.margin_raw + rec.margin_tol < 0.0) {
    if (rep.containment_pass || rep.violations.size() < kMaxViolations)
      note_violation(rep, "step " + std::to_string(step) + ", cell " +
                              std::to_string(rec.margin_cell) + " (x=" +
                              fmt(g.x(rec.margin_cell)) + ", t=" + fmt(f.t) +
                              "): region face " + rec.margin_face + " violated, margin " +
                              fmt(rec.margin_raw) + " < -" + fmt(rec.margin_tol));
    rep.containment_pass = false;
  }
  const double gap_req = C3_ - rec.margin_tol;
  if (rec.min_gap < gap_req) {
    note_violation(rep, "step " + std::to_string(step) + " (t=" + fmt(f.t) +
                            "): vacuum gap w-z=" + fmt(rec.min_gap) + " < C3-tol=" + fmt(gap_req));
    rep.gap_pass = false;
  }
  if (rec.wall > 1e-12) {
    note_violation(rep, "step " + std::to_string(step) + ": wall condition |w+z|=" +
                            fmt(rec.wall) + " at x=0");
    rep.wall_pass = false;
  }

  rep.min_margin_raw = std::min(rep.min_margin_raw, rec.margin_raw);
  rep.min_margin_adjusted = std::min(rep.min_margin_adjusted, rec.margin_raw + rec.margin_tol);
  rep.min_gap = std::min(rep.min_gap, rec.min_gap);
  rep.gap_required = std::max(rep.gap_required, gap_req);
  rep.max_wall = std::max(rep.max_wall, rec.wall);
  rep.max_z_x = std::max(rep.max_z_x, rec.max_z_x);
  rep.max_w_x = std::max(rep.max_w_x, rec.max_w_x);
  rep.max_z_t = std::max(rep.max_z_t, rec.max_z_t);
  rep.max_w_t = std::max(rep.max_w_t, rec.max_w_t);
  rep.phi_min = std::min(rep.phi_min, rec.phi_min);
  rep.phi_max = std::max(rep.phi_max, rec.phi_max);
  rep.psi_min = std::min(rep.psi_min, rec.psi_min);
  rep.psi_max = std::max(rep.psi_max, rec.psi_max);
  rep.steps.push_back(std::move(rec));

  recent_.push_back({f.t, f.z_b, f.w_b, f.z, f.w});
  if (recent_.size() > 3) recent_.erase(recent_.begin());
  if (recent_.size() == 3) {
    const auto norms = conservation_residual(recent_[0], recent_[1], recent_[2], g.dx,
                                             std::min(window + 1, g.n), law, *sc.spec.profile);
    rep.mass_linf_max = std::max(rep.mass_linf_max, norms.mass_linf);
    rep.momentum_linf_max = std::max(rep.momentum_linf_max, norms.momentum_linf);
    rep.conservation.push_back(norms);
  }
}

namespace {

FamilySummary summarize(int family, const std::vector<CharPath>& paths, const History& h,
                        const ScenarioConfig& cfg, double M) {
  FamilySummary out;
  out.family = family;
  out.paths = paths.size();
  out.lower_min = out.upper_min = out.subsolution_min = kInf;
  const auto& b = cfg.bounds;
  for (const auto& p : paths) {
    const auto res = riccati_residual(p, h.dx(), h.x_max());
    const auto rep =
        bound_check(p, cfg.scenario.problem, b.delta1, M, b.alpha, &res, cfg.monitors.residual_floor);
    out.residual_samples += res.residual.size();
    out.residual_max = std::max(out.residual_max, res.max_abs);
    out.residual_l1 += res.l1;
    out.residual_printed_max = std::max(out.residual_printed_max, res.max_abs_printed);
    out.max_integral = std::max(out.max_integral, rep.max_integral);
    out.max_tolerance = std::max({out.max_tolerance, rep.lower.tolerance, rep.upper.tolerance});
    const std::string who = "family " + std::to_string(family) + " path from (x=" + fmt(p.x0) +
                            ", t=" + fmt(p.t0) + ")";
    out.lower_min = std::min(out.lower_min, rep.lower.value);
    out.upper_min = std::min(out.upper_min, rep.upper.value);
    out.subsolution_min = std::min(out.subsolution_min, rep.subsolution.value);
    if (!rep.lower.pass) {
      out.lower_pass = false;
      if (out.failures.size() < kMaxViolations)
        out.failures.push_back(who + ": lower barrier margin " + fmt(rep.lower.value) + " at t=" +
                               fmt(rep.lower.t) + ", x=" + fmt(rep.lower.x));
    }
    if (!rep.upper.pass) {
      out.upper_pass = false;
      if (out.failures.size() < kMaxViolations)
        out.failures.push_back(who + ": upper bound " +
                               (rep.contract_failure ? *rep.contract_failure
                                                     : "margin " + fmt(rep.upper.value)) +
                               " at t=" + fmt(rep.upper.t) + ", x=" + fmt(rep.upper.x));
    }
    if (!rep.subsolution.pass) {
      out.subsolution_pass = false;
      if (out.failures.size() < kMaxViolations)
        out.failures.push_back(who + ": subsolution inequality LHS " +
                               fmt(-rep.subsolution.value) + " > 0 at t=" +
                               fmt(rep.subsolution.t) + ", x=" + fmt(rep.subsolution.x));
    }
  }
  if (paths.empty()) out.lower_min = out.upper_min = out.subsolution_min = 0.0;
  return out;
}

}  // namespace

CharacteristicReport characteristic_pass(const History& h, const ScenarioConfig& cfg,
                                         const MonitorReport& mon, std::optional<double> M) {
  const auto& sc = cfg.scenario;
  const double barrier_M = M.value_or(cfg.bounds.M);
  FanOptions fo;
  fo.count = cfg.monitors.fan;
  fo.include_boundary = sc.problem == Problem::P2 && cfg.monitors.boundary_launches;

  CharacteristicReport rep;
  auto p1 = fan(h, 1, fo);
  auto p2 = fan(h, 2, fo);
  const double a0 = sc.spec.profile->a(0.0);
  auto set_exact = [&](CharPath& p) {
    try {
      PhiPsi f;
      if (p.t0 == 0.0) {
        const auto d = sc.initial.at(p.x0);
        f = phi_psi({d.z, d.w}, d.z_x, d.w_x, sc.spec.profile->a(p.x0), sc.law);
      } else if (sc.boundary && p.x0 == 0.0) {
        const auto b = sc.boundary->at(p.t0);
        f = phi_psi_boundary({b.z, b.w}, b.z_t, b.w_t, a0, sc.law);
      } else {
        return;
      }
      p.launch_exact = p.family == 1 ? f.phi : f.psi;
    } catch (const Error&) {
    }
  };
  for (auto& p : p1) set_exact(p);
  for (auto& p : p2) set_exact(p);
  rep.phi = summarize(1, p1, h, cfg, barrier_M);
  rep.psi = summarize(2, p2, h, cfg, barrier_M);

  double gap_max = 0.0;
  try {
    const auto sb = region_speed_bounds(sc.spec, sc.law);
    gap_max = sb.C1 + sb.C2;
  } catch (const ContractError&) {
    for (const auto& s : h.trajectory().snapshots)
      for (std::size_t i = 0; i < s.z.size(); ++i) gap_max = std::max(gap_max, s.w[i] - s.z[i]);
  }
  const double beta = sc.law.beta();
  const double amp = std::pow(gap_max, -beta);
  const double phi_abs = std::max(cfg.bounds.delta1, cfg.bounds.delta2 + rep.phi.max_integral);
  const double psi_abs = std::max(cfg.bounds.delta1, cfg.bounds.delta2 + rep.psi.max_integral);
  rep.z_x_bound = (phi_abs + mon.phi_offset_max) * amp;
  rep.w_x_bound = (psi_abs + mon.psi_offset_max) * amp;
  rep.derivative_tolerance =
      5.0 * std::max(rep.phi.max_tolerance, rep.psi.max_tolerance) * amp + cfg.monitors.residual_floor;
  rep.derivative_pass = mon.max_z_x <= rep.z_x_bound + rep.derivative_tolerance &&
                        mon.max_w_x <= rep.w_x_bound + rep.derivative_tolerance;

  rep.paths = std::move(p1);
  rep.paths.insert(rep.paths.end(), std::make_move_iterator(p2.begin()),
                   std::make_move_iterator(p2.end()));
  return rep;
}

std::string scheme_description(const SolverOptions& o) {
  std::ostringstream os;
  os << (o.order == 1 ? "first-order donor cell, forward Euler"
                      : "minmod reconstruction, Heun time stepping")
     << "; face speed = mean of adjacent cells; cfl=" << o.cfl << "; n=" << o.n
     << " (scheme choices are artifact decisions, not part of the analysis)";
  return os.str();
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  ScenarioOutcome out;
  out.certificate = certify(cfg);
  const std::string dir =
      (std::filesystem::path(options.out_dir.value_or(cfg.output.dir)) / cfg.name).string();
  auto write = [&](const std::string& file, const std::string& content) {
    if (!options.write_files) return;
    std::filesystem::create_directories(dir);
    std::ofstream os(std::filesystem::path(dir) / file, std::ios::binary);
    if (!os) throw IoError("cannot write " + dir + "/" + file);
    os << content;
  };
  auto finish = [&] {
    write("certificate.txt", out.certificate.text());
    if (options.format == "csv") {
      std::ostringstream os;
      write_monitor_csv(os, out.monitors);
      write("monitors.csv", os.str());
    }
    write("report.json", outcome_json(out, cfg));
  };

  if (!out.certificate.pass()) {
    if (!cfg.monitors.override_certificate) {
      out.exit_code = kExitCertificate;
      out.messages.push_back("certification failed; run skipped");
      finish();
      return out;
    }
    out.overridden = true;
    out.messages.push_back("certification failed; running anyway (override set)");
  }
  if (cfg.scenario.options.cfl > 1.0)
    out.messages.push_back("cfl above 1: the scheme is not expected to be stable");

  const Solver solver(cfg.scenario);
  Monitor monitor(solver, cfg);
  try {
    out.run = run(
        solver, [&](const Field& f, std::size_t step, double dt) { monitor.observe(f, step, dt); },
        cfg.text);
  } catch (const SonicBoundaryError& e) {
    out.monitors = monitor.take();
    out.monitors.violations.push_back(e.what());
    out.monitors.wall_pass = false;
    out.exit_code = kExitMonitor;
    finish();
    return out;
  }
  out.monitors = monitor.take();
  auto& res = *out.run;

  if (options.write_files) {
    std::ostringstream csv;
    write_solution_csv(csv, res.trajectory, cfg, cfg.output.csv_every);
    write("solution.csv", csv.str());
    if (cfg.output.save_trajectory) {
      std::filesystem::create_directories(dir);
      res.trajectory.save((std::filesystem::path(dir) / "trajectory.bin").string());
    }
  }

  if (res.blow_up) {
    out.exit_code = kExitBlowUp;
    out.messages.push_back(res.blow_up->message);
    finish();
    return out;
  }

  if (options.characteristics && res.trajectory.stride <= 10) {
    const History h(res.trajectory, cfg.scenario.law, cfg.scenario.spec.profile);
    out.characteristics = characteristic_pass(h, cfg, out.monitors);
    if (options.write_files) {
      std::ostringstream os;
      write_paths_csv(os, out.characteristics->paths);
      write("paths.csv", os.str());
    }
  } else if (options.characteristics) {
    out.messages.push_back("characteristic pass skipped: snapshot stride above 10");
  }

  const bool chars_ok = !out.characteristics || out.characteristics->pass();
  out.exit_code = out.monitors.pass() && chars_ok ? kExitOk : kExitMonitor;
  finish();
  return out;
}

}  // namespace nozzle
