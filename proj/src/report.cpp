#include "nozzle/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "nozzle/harness.hpp"
#include "nozzle/riccati.hpp"

namespace nozzle {

namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json certificate_to_json(const Certificate& c) {
  json items = json::array();
  for (const auto& q : c.items()) {
    items.push_back({{"name", q.name},
                     {"lhs", num(q.lhs)},
                     {"rhs", num(q.rhs)},
                     {"slack", num(q.slack)},
                     {"strict", q.strict},
                     {"pass", q.pass},
                     {"where", q.where},
                     {"samples", q.samples}});
  }
  return {{"title", c.title()},
          {"pass", c.pass()},
          {"conditional", c.conditional()},
          {"items", items},
          {"notes", c.notes()}};
}

json bundle_to_json(const CertBundle& b) {
  json parts = json::array();
  for (const auto& c : b.parts) parts.push_back(certificate_to_json(c));
  return {{"pass", b.pass()}, {"conditional", b.conditional()}, {"parts", parts}};
}

json family_to_json(const FamilySummary& f) {
  return {{"family", f.family},
          {"paths", f.paths},
          {"residual_samples", f.residual_samples},
          {"residual_max", num(f.residual_max)},
          {"residual_l1", num(f.residual_l1)},
          {"residual_printed_max", num(f.residual_printed_max)},
          {"lower_min", num(f.lower_min)},
          {"upper_min", num(f.upper_min)},
          {"subsolution_min", num(f.subsolution_min)},
          {"max_integral", num(f.max_integral)},
          {"max_tolerance", num(f.max_tolerance)},
          {"lower_pass", f.lower_pass},
          {"upper_pass", f.upper_pass},
          {"subsolution_pass", f.subsolution_pass},
          {"failures", f.failures}};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_solution_csv(std::ostream& os, const Trajectory& traj, const ScenarioConfig& cfg,
                        std::size_t every) {
  const auto& sc = cfg.scenario;
  const auto& law = sc.law;
  const auto& profile = *sc.spec.profile;
  std::size_t window = 0;
  while (window < traj.n && traj.x(window) <= traj.x_interest) ++window;
  std::vector<double> a(window), s(window);
  for (std::size_t i = 0; i < window; ++i) {
    a[i] = profile.a(traj.x(i));
    s[i] = profile.cum_abar(traj.x(i));
  }
  const double th = law.theta();
  os << kSolutionCsvHeader << '\n';
  const std::size_t count = traj.snapshots.size();
  every = std::max<std::size_t>(every, 1);
  for (std::size_t k = 0; k < count; ++k) {
    if (k % every != 0 && k + 1 != count) continue;
    const auto& snap = traj.snapshots[k];
    for (std::size_t i = 0; i < window; ++i) {
      const double z = snap.z[i], w = snap.w[i];
      const RiemannState r{z, w};
      const double z_x = cell_slope(snap.z, snap.z_b, i, traj.dx);
      const double w_x = cell_slope(snap.w, snap.w_b, i, traj.dx);
      const double v = 0.5 * (w + z);
      const double rho = std::pow(std::max(0.0, 0.5 * th * (w - z)), 1.0 / th);
      double phi = std::nan(""), psi = std::nan("");
      if (r.gap() > kVacuumGap) {
        const auto f = phi_psi(r, z_x, w_x, a[i], law);
        phi = f.phi;
        psi = f.psi;
      }
      const auto m = membership_at(r, s[i], sc.spec.kind, sc.spec.c);
      const auto l = char_speeds_unchecked(r, law);
      const double row[] = {snap.t, traj.x(i), rho,    v,      z,      w,   z_x,       w_x,      phi,
                            psi,    m.z_lo,    m.z_hi, m.w_lo, m.w_hi, m.gap, l.lambda1, l.lambda2};
      for (std::size_t c = 0; c < std::size(row); ++c) os << (c ? "," : "") << format_double(row[c]);
      os << '\n';
    }
  }
}

void write_monitor_csv(std::ostream& os, const MonitorReport& r) {
  os << "step,t,margin_raw,margin_tol,margin_cell,margin_face,min_gap,max_z_x,max_w_x,max_z_t,"
        "max_w_t,phi_min,phi_max,psi_min,psi_max,wall,mass_linf,mass_l1,momentum_linf,momentum_l1\n";
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const auto& s = r.steps[k];
    os << s.step << ',' << format_double(s.t) << ',' << format_double(s.margin_raw) << ','
       << format_double(s.margin_tol) << ',' << s.margin_cell << ',' << s.margin_face << ','
       << format_double(s.min_gap) << ',' << format_double(s.max_z_x) << ','
       << format_double(s.max_w_x) << ',' << format_double(s.max_z_t) << ','
       << format_double(s.max_w_t) << ',' << format_double(s.phi_min) << ','
       << format_double(s.phi_max) << ',' << format_double(s.psi_min) << ','
       << format_double(s.psi_max) << ',' << format_double(s.wall);
    // conservation norms exist for the interior levels 1 .. steps-2
    if (k >= 1 && k - 1 < r.conservation.size()) {
      const auto& c = r.conservation[k - 1];
      os << ',' << format_double(c.mass_linf) << ',' << format_double(c.mass_l1) << ','
         << format_double(c.momentum_linf) << ',' << format_double(c.momentum_l1);
    } else {
      os << ",,,,";
    }
    os << '\n';
  }
}

void write_paths_csv(std::ostream& os, const std::vector<CharPath>& paths) {
  os << "path,family,x0,t0,t,x,z,w,F,A,B,C\n";
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& path = paths[p];
    for (const auto& s : path.samples) {
      os << p << ',' << path.family << ',' << format_double(path.x0) << ','
         << format_double(path.t0) << ',' << format_double(s.t) << ',' << format_double(s.x) << ','
         << format_double(s.z) << ',' << format_double(s.w) << ',' << format_double(s.F) << ','
         << format_double(s.A) << ',' << format_double(s.B) << ',' << format_double(s.C) << '\n';
    }
  }
}

std::string certificate_json(const CertBundle& bundle) { return bundle_to_json(bundle).dump(2); }

std::string outcome_json(const ScenarioOutcome& out, const ScenarioConfig& cfg) {
  const auto& m = out.monitors;
  json j;
  j["scenario"] = cfg.name;
  j["problem"] = to_string(cfg.scenario.problem);
  j["gamma"] = cfg.scenario.law.gamma();
  j["seed"] = cfg.seed;
  j["scheme"] = scheme_description(cfg.scenario.options);
  j["exit_code"] = out.exit_code;
  j["overridden"] = out.overridden;
  j["messages"] = out.messages;
  j["certificate"] = bundle_to_json(out.certificate);
  if (cfg.feasibility) {
    j["feasibility"] = {{"feasible", cfg.feasibility->feasible},
                        {"min_slack", num(cfg.feasibility->min_slack)},
                        {"report", cfg.feasibility->report}};
  }
  const auto& c = cfg.scenario.spec.c;
  j["region"] = {{"kind", to_string(cfg.scenario.spec.kind)},
                 {"L1", c.L1},
                 {"L2", c.L2},
                 {"U1", c.U1},
                 {"U2", c.U2},
                 {"I", num(cfg.scenario.spec.I())}};
  if (out.run) {
    const auto& t = out.run->trajectory;
    j["run"] = {{"steps", out.run->steps},
                {"n", t.n},
                {"dx", t.dx},
                {"x_interest", t.x_interest},
                {"x_max", t.x_max},
                {"t_final", out.run->final_field.t},
                {"blow_up", out.run->blow_up ? json(out.run->blow_up->message) : json(nullptr)}};
  }
  j["monitors"] = {{"pass", m.pass()},
                   {"containment_pass", m.containment_pass},
                   {"gap_pass", m.gap_pass},
                   {"wall_pass", m.wall_pass},
                   {"min_margin_raw", num(m.min_margin_raw)},
                   {"min_margin_adjusted", num(m.min_margin_adjusted)},
                   {"min_gap", num(m.min_gap)},
                   {"gap_required", num(m.gap_required)},
                   {"max_wall", num(m.max_wall)},
                   {"max_z_x", num(m.max_z_x)},
                   {"max_w_x", num(m.max_w_x)},
                   {"max_z_t", num(m.max_z_t)},
                   {"max_w_t", num(m.max_w_t)},
                   {"phi_min", num(m.phi_min)},
                   {"phi_max", num(m.phi_max)},
                   {"psi_min", num(m.psi_min)},
                   {"psi_max", num(m.psi_max)},
                   {"mass_linf_max", num(m.mass_linf_max)},
                   {"momentum_linf_max", num(m.momentum_linf_max)},
                   {"steps_observed", m.steps.size()},
                   {"violations", m.violations}};
  if (out.characteristics) {
    const auto& ch = *out.characteristics;
    j["characteristics"] = {{"pass", ch.pass()},
                            {"phi", family_to_json(ch.phi)},
                            {"psi", family_to_json(ch.psi)},
                            {"z_x_bound", num(ch.z_x_bound)},
                            {"w_x_bound", num(ch.w_x_bound)},
                            {"derivative_tolerance", num(ch.derivative_tolerance)},
                            {"derivative_pass", ch.derivative_pass}};
  }
  return j.dump(2) + "\n";
}

}  // namespace nozzle
