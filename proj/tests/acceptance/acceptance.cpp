// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
// argv[1] is the directory holding the desk configurations.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "nozzle/harness.hpp"
#include "nozzle/region.hpp"
#include "nozzle/riccati.hpp"
#include "oracles.hpp"

using namespace nozzle;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

fs::path g_configs;
fs::path g_scratch;

ScenarioConfig desk(int p, const ConfigOverrides& extra = {}) {
  return load_config((g_configs / ("desk_p" + std::to_string(p) + ".cfg")).string(), extra);
}

struct DeskRun {
  ScenarioOutcome outcome;
  double seconds = 0.0;
};

// Desk runs are shared between criteria; key is (problem, n, mutated).
std::map<std::tuple<int, std::size_t, bool>, DeskRun> g_runs;

const DeskRun& desk_run(int p, std::size_t n, bool mutate = false) {
  const auto key = std::make_tuple(p, n, mutate);
  if (auto it = g_runs.find(key); it != g_runs.end()) return it->second;
  ConfigOverrides o{"solver.n=" + std::to_string(n)};
  if (mutate) o.push_back("solver.mutate_w_source=true");
  const auto cfg = desk(p, o);
  RunOptions ro;
  ro.out_dir = (g_scratch / ("runs_n" + std::to_string(n) + (mutate ? "_mut" : ""))).string();
  const auto t0 = Clock::now();
  DeskRun r{run_scenario(cfg, ro), 0.0};
  r.seconds = seconds_since(t0);
  return g_runs.emplace(key, std::move(r)).first->second;
}

// Space-time L1 norms of the conservative residual.
std::pair<double, double> spacetime_l1(const MonitorReport& m) {
  double mass = 0.0, mom = 0.0;
  for (std::size_t k = 1; k < m.conservation.size(); ++k) {
    const double dt = m.conservation[k].t - m.conservation[k - 1].t;
    mass += m.conservation[k].mass_l1 * dt;
    mom += m.conservation[k].momentum_l1 * dt;
  }
  return {mass, mom};
}

std::vector<std::string> failing(const Certificate& c) {
  std::vector<std::string> names;
  for (const auto* q : c.failures()) names.push_back(q->name);
  return names;
}

Verdict critical_constants_criterion() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto c = critical_constants(GasLaw::parse("5/3"));
  const double l = 4.0 + 2.0 * std::sqrt(3.0);
  // sigma1 = -r for the root r < -1 of l r^2 - 4 r - (8 + l) = 0
  const double r = (4.0 - std::sqrt(16.0 + 4.0 * l * (8.0 + l))) / (2.0 * l);
  v.require(std::abs(c.l - l) <= 1e-8, "l = " + fmt(c.l, 12));
  v.require(std::abs(c.sigma1 + r) <= 1e-8 && std::abs(c.sigma1 - 1.1961524) <= 1e-7,
            "sigma1 = " + fmt(c.sigma1, 12));
  v.require(std::abs(c.sigma2 - std::sqrt(3.0)) <= 1e-8, "sigma2 = " + fmt(c.sigma2, 12));

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> gam(1.0, 5.0 / 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    double g = gam(rng);
    if (g <= 1.0) g = 5.0 / 3.0;
    const auto mine = critical_constants(GasLaw::from_gamma(g));
    const auto ref = oracle::brute_force_constants(g);
    worst = std::max({worst, std::abs(mine.l - ref.l) / std::max(1.0, ref.l),
                      std::abs(mine.sigma1 - ref.sigma1), std::abs(mine.sigma2 - ref.sigma2)});
  }
  v.require(worst <= 1e-8, "20 random gamma against the grid oracle, worst gap " + fmt(worst));
  const double s = seconds_since(t0);
  v.require(s < 5.0, "runtime " + fmt(s) + " s");
  return v;
}

Verdict hypothesis_criterion() {
  Verdict v;
  const auto t0 = Clock::now();
  const GasLaw law = GasLaw::parse("5/3");
  const auto cc = critical_constants(law);
  const double I = 0.005;
  auto exactly = [&](const Certificate& c, const std::string& name, const std::string& label) {
    const auto f = failing(c);
    v.require(f == std::vector<std::string>{name}, label + " fails exactly '" + name + "'");
  };
  const RegionConstants h2{1.02, 0.9, 1.0, 1.1}, h3{1.0, 1.2, 1.05, 1.25}, h4{1.02, 0.9, 1.0, 0.88};
  v.require(check_constants(RegionKind::m, h2, I, law, cc).pass(), "H2 worked set passes");
  v.require(check_constants(RegionKind::r, h3, I, law, cc).pass(), "H3 worked set passes");
  v.require(check_constants(RegionKind::l, h4, I, law, cc).pass(), "H4 worked set passes");
  auto p2 = h2;
  p2.L1 = 1.0;
  exactly(check_constants(RegionKind::m, p2, I, law, cc), "U1*exp(2I) <= L1", "H2 with L1=1");
  auto p3 = h3;
  p3.L2 = 1.05;
  exactly(check_constants(RegionKind::r, p3, I, law, cc), "U1*exp(2I) < L2", "H3 with L2=1.05");
  auto p4 = h4;
  p4.U2 = 0.95;
  exactly(check_constants(RegionKind::l, p4, I, law, cc), "U2*exp(2I) <= L2", "H4 with U2=0.95");
  const double s = seconds_since(t0);
  v.require(s < 1.0, "runtime " + fmt(s) + " s");
  return v;
}

Verdict algebra_criterion() {
  Verdict v;
  const GasLaw mono = GasLaw::parse("5/3"), air = GasLaw::parse("7/5");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // states drawn from the three desk regions at random positions of the reporting window
  double worst_trip = 0.0, worst_oracle = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const auto cfg = desk(p);
    const auto& spec = cfg.scenario.spec;
    for (int k = 0; k < 3334; ++k) {
      const double x = 2.0 * u01(rng);
      const auto e = envelope(spec.kind, spec.c, spec.profile->cum_abar(x));
      const RiemannState r{e.z_lo + (e.z_hi - e.z_lo) * u01(rng),
                           e.w_lo + (e.w_hi - e.w_lo) * u01(rng)};
      const auto g = from_riemann(r, mono);
      const auto back = to_riemann(GasState::from_density_velocity(g.rho, g.v), mono);
      worst_trip = std::max({worst_trip, std::abs(back.z - r.z), std::abs(back.w - r.w)});
      double rho = 0.0, vel = 0.0;
      oracle::invariants_to_primitive(r.z, r.w, 5.0 / 3.0, rho, vel);
      worst_oracle = std::max({worst_oracle, std::abs(rho - g.rho), std::abs(vel - g.v)});
    }
  }
  v.require(worst_trip <= 1e-12, "10^4 in-region round trips, worst " + fmt(worst_trip));
  v.require(worst_oracle <= 1e-12, "primitive values against the oracle, worst " + fmt(worst_oracle));

  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rel = [](double p, double q) { return std::abs(p - q) / std::max(1.0, std::abs(q)); };
  for (const auto* law : {&mono, &air}) {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double z = u(rng), w = u(rng), L = u(rng), a = u(rng), ax = u(rng);
      worst = std::max({worst, rel(coeff_B_hat(z, w, L, a, *law), coeff_B(w, z, L, a, *law)),
                        rel(coeff_C1_hat(z, w, L, a, ax, *law), coeff_C1(w, z, L, a, ax, *law))});
    }
    v.require(worst <= 1e-12, std::string(law->is_log_branch() ? "log" : "power") +
                                  " branch swap symmetry, worst " + fmt(worst));
  }
  return v;
}

Verdict constant_state_criterion() {
  Verdict v;
  struct Case {
    int p;
    double z, w;
  };
  for (const Case c : {Case{1, -1.01, 1.01}, Case{2, 1.025, 1.225}, Case{3, -1.01, -0.89}}) {
    for (int order : {1, 2}) {
      auto cfg = desk(c.p, {"profile.family=zero", "profile.eps=1e-3", "solver.n=400",
                            "solver.order=" + std::to_string(order)});
      auto& sc = cfg.scenario;
      sc.initial = InitialData::riemann(Expression::constant(c.z), Expression::constant(c.w));
      if (sc.boundary) sc.boundary = BoundaryData(Expression::constant(c.z), Expression::constant(c.w));
      const Solver solver(sc);
      auto f = solver.initial_field();
      for (int k = 0; k < 1000; ++k) solver.step(f, solver.cfl_dt(f));
      double drift = std::max(std::abs(f.z_b - c.z), std::abs(f.w_b - c.w));
      for (std::size_t i = 0; i < f.z.size(); ++i)
        drift = std::max({drift, std::abs(f.z[i] - c.z), std::abs(f.w[i] - c.w)});
      v.require(drift <= 1e-11, "P" + std::to_string(c.p) + " order " + std::to_string(order) +
                                    " drift " + fmt(drift));
    }
  }
  return v;
}

Verdict region_criterion() {
  Verdict v;
  for (int p = 1; p <= 3; ++p) {
    const auto& r = desk_run(p, 2000);
    const auto& m = r.outcome.monitors;
    const std::string tag = "P" + std::to_string(p);
    v.require(r.outcome.certificate.pass(), tag + " certified");
    v.require(r.outcome.run && !r.outcome.run->blow_up && r.outcome.run->final_field.t == 5.0,
              tag + " reached T=5");
    v.require(m.containment_pass && m.min_margin_adjusted >= 0.0,
              tag + " adjusted margin " + fmt(m.min_margin_adjusted) + " (raw " +
                  fmt(m.min_margin_raw) + ")");
    v.require(m.gap_pass && m.min_gap >= m.gap_required,
              tag + " gap " + fmt(m.min_gap) + " >= " + fmt(m.gap_required));
    if (p == 1) v.require(m.wall_pass, tag + " wall condition, max " + fmt(m.max_wall));
    v.require(r.seconds < 60.0, tag + " runtime " + fmt(r.seconds) + " s");
  }
  return v;
}

Verdict riccati_criterion() {
  Verdict v;
  for (int p = 1; p <= 3; ++p) {
    const auto& coarse = desk_run(p, 1000).outcome.characteristics;
    const auto& fine = desk_run(p, 2000).outcome.characteristics;
    const std::string tag = "P" + std::to_string(p);
    if (!coarse || !fine) {
      v.require(false, tag + " characteristic pass missing");
      continue;
    }
    for (const auto pick : {&CharacteristicReport::phi, &CharacteristicReport::psi}) {
      const auto& c = (*coarse).*pick;
      const auto& f = (*fine).*pick;
      const std::string fam = tag + " family " + std::to_string(f.family);
      v.require(f.paths >= 20 && c.paths >= 20, fam + " paths " + std::to_string(f.paths));
      // sup over every sample of every traced path of the family
      const double order = std::log2(c.residual_max / f.residual_max);
      v.require(order >= 0.8, fam + " max residual " + fmt(c.residual_max) + " -> " +
                                  fmt(f.residual_max) + ", order " + fmt(order, 3));
      v.notes.push_back("info: " + fam + " summed L1 order " +
                        fmt(std::log2(c.residual_l1 / f.residual_l1), 3));
    }
  }
  return v;
}

Verdict derivative_criterion() {
  Verdict v;
  for (int p = 1; p <= 3; ++p) {
    const auto& out = desk_run(p, 2000).outcome;
    const std::string tag = "P" + std::to_string(p);
    if (!out.characteristics) {
      v.require(false, tag + " characteristic pass missing");
      continue;
    }
    const auto& ch = *out.characteristics;
    for (const auto* fam : {&ch.phi, &ch.psi}) {
      const std::string name = tag + " family " + std::to_string(fam->family);
      v.require(fam->lower_pass, name + " lower bound, min slack " + fmt(fam->lower_min));
      v.require(fam->upper_pass, name + " upper bound, min slack " + fmt(fam->upper_min));
      v.require(fam->subsolution_pass,
                name + " subsolution at M, min " + fmt(fam->subsolution_min));
    }
    v.require(ch.derivative_pass, tag + " |z_x| " + fmt(out.monitors.max_z_x) + " <= " +
                                      fmt(ch.z_x_bound) + ", |w_x| " + fmt(out.monitors.max_w_x) +
                                      " <= " + fmt(ch.w_x_bound));
    if (p == 3) continue;
    // the same stored history, re-verified with the barrier parameter divided by 100
    const auto cfg = desk(p, {"solver.n=2000"});
    const History h(out.run->trajectory, cfg.scenario.law, cfg.scenario.spec.profile);
    const auto reduced = characteristic_pass(h, cfg, out.monitors, cfg.bounds.M / 100.0);
    const bool fails = !reduced.phi.subsolution_pass || !reduced.psi.subsolution_pass;
    v.require(fails, tag + " subsolution fails at M/100 (min " +
                         fmt(std::min(reduced.phi.subsolution_min, reduced.psi.subsolution_min)) +
                         ")");
  }
  return v;
}

Verdict conservation_criterion() {
  Verdict v;
  for (int p = 1; p <= 3; ++p) {
    const auto [m1, q1] = spacetime_l1(desk_run(p, 1000).outcome.monitors);
    const auto [m2, q2] = spacetime_l1(desk_run(p, 2000).outcome.monitors);
    const std::string tag = "P" + std::to_string(p);
    const double om = std::log2(m1 / m2), oq = std::log2(q1 / q2);
    v.require(om >= 0.8, tag + " mass residual order " + fmt(om, 3));
    v.require(oq >= 0.8, tag + " momentum residual order " + fmt(oq, 3));
  }
  const auto [mc, qc] = spacetime_l1(desk_run(2, 1000).outcome.monitors);
  const auto [mm, qm] = spacetime_l1(desk_run(2, 1000, true).outcome.monitors);
  const double ratio = std::max(mm / mc, qm / qc);
  v.require(ratio > 10.0, "P2 source sign mutation raises the residual " + fmt(ratio, 3) + "x");
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism_criterion() {
  Verdict v;
  const auto& first = desk_run(1, 2000);
  const fs::path a = g_scratch / "runs_n2000" / desk(1).name / "solution.csv";
  const fs::path b_dir = g_scratch / "rerun";
  RunOptions ro;
  ro.out_dir = b_dir.string();
  run_scenario(desk(1), ro);
  const fs::path b = b_dir / desk(1).name / "solution.csv";
  const auto sa = slurp(a), sb = slurp(b);
  v.require(first.outcome.exit_code == kExitOk && !sa.empty(),
            "first run wrote " + std::to_string(sa.size()) + " bytes");
  v.require(sa == sb, "second run is byte-identical");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  g_configs = argc > 1 ? fs::path(argv[1]) : fs::path("configs");
  g_scratch = fs::temp_directory_path() / ("nozzle_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(g_scratch);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"critical constants", critical_constants_criterion},
      {"hypothesis certificates", hypothesis_criterion},
      {"round trips and coefficient symmetry", algebra_criterion},
      {"constant-state preservation", constant_state_criterion},
      {"invariant region containment", region_criterion},
      {"Riccati identity under refinement", riccati_criterion},
      {"derivative bounds and subsolution", derivative_criterion},
      {"conservative residual and mutation", conservation_criterion},
      {"determinism", determinism_criterion},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << (k + 1) << " " << criteria[k].first << "\n";
    for (const auto& n : v.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  std::error_code ec;
  fs::remove_all(g_scratch, ec);
  return all ? 0 : 1;
}
