#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nozzle/characteristics.hpp"
#include "nozzle/config.hpp"
#include "nozzle/errors.hpp"
#include "nozzle/harness.hpp"
#include "nozzle/region.hpp"
#include "nozzle/report.hpp"

using namespace nozzle;

namespace {

struct Globals {
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  std::vector<std::string> overrides;
};

ScenarioConfig load(const std::string& path, const Globals& g) {
  auto cfg = load_config(path, g.overrides);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

ScenarioConfig from_trajectory(const Trajectory& t, const std::string& path, const Globals& g) {
  if (t.config_text.empty()) throw ConfigError(path + " carries no configuration text");
  auto cfg = parse_config(t.config_text, "trajectory", g.overrides);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

int cmd_constants(const std::string& gamma) {
  const auto law = GasLaw::parse(gamma);
  if (law.warning()) std::cerr << "warning: " << *law.warning() << '\n';
  const auto cc = critical_constants(law);
  std::printf("l=%.12g, sigma1=%.12g, sigma2=%.12g\n", cc.l, cc.sigma1, cc.sigma2);
  return kExitOk;
}

int cmd_check(const std::string& path, const Globals& g) {
  const auto cfg = load(path, g);
  const auto bundle = certify(cfg);
  if (cfg.feasibility) std::cout << cfg.feasibility->report << '\n';
  for (const auto& part : bundle.parts)
    std::cout << (part.pass() ? "PASS " : "FAIL ") << part.title()
              << (part.conditional() ? " (conditional)" : "") << '\n';
  if (!g.quiet) std::cout << bundle.text();
  if (g.format == "json" && !g.out.empty()) {
    std::filesystem::create_directories(g.out);
    std::ofstream(std::filesystem::path(g.out) / (cfg.name + ".certificate.json"))
        << certificate_json(bundle);
  }
  return bundle.pass() ? kExitOk : kExitCertificate;
}

int cmd_feasible(const std::string& gamma, double I, const std::string& kind, const Globals& g) {
  const auto law = GasLaw::parse(gamma);
  const auto res = find_constants(law, I, parse_region_kind(kind));
  std::cout << res.report << '\n';
  if (!g.quiet) std::cout << res.certificate.text();
  return res.feasible ? kExitOk : kExitCertificate;
}

void print_outcome(const ScenarioOutcome& out, const ScenarioConfig& cfg, const Globals& g) {
  std::cout << cfg.name << ": exit " << out.exit_code;
  if (out.run) std::cout << ", " << out.run->steps << " steps";
  std::cout << (out.certificate.pass() ? ", certificate PASS" : ", certificate FAIL");
  std::cout << (out.monitors.pass() ? ", monitors PASS" : ", monitors FAIL");
  if (out.characteristics)
    std::cout << (out.characteristics->pass() ? ", characteristics PASS" : ", characteristics FAIL");
  std::cout << '\n';
  if (g.quiet) return;
  for (const auto& m : out.messages) std::cout << "  " << m << '\n';
  for (const auto& v : out.monitors.violations) std::cout << "  violation: " << v << '\n';
  if (out.characteristics) {
    for (const auto* f : {&out.characteristics->phi, &out.characteristics->psi})
      for (const auto& s : f->failures) std::cout << "  " << s << '\n';
  }
  for (const auto& part : out.certificate.parts)
    for (const auto* q : part.failures()) std::cout << "  FAIL " << part.title() << ": " << q->name << '\n';
}

int cmd_simulate(const std::string& path, const Globals& g) {
  RunOptions ro;
  if (!g.out.empty()) ro.out_dir = g.out;
  ro.format = g.format;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(path))
      if (e.path().extension() == ".cfg") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .cfg files in " + path);
    std::vector<ScenarioConfig> cfgs;
    for (const auto& f : files) cfgs.push_back(load(f, g));
    std::vector<std::future<ScenarioOutcome>> jobs;
    for (const auto& c : cfgs)
      jobs.push_back(std::async(std::launch::async, [&c, ro] { return run_scenario(c, ro); }));
    int code = kExitOk;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const auto out = jobs[k].get();
      print_outcome(out, cfgs[k], g);
      code = std::max(code, out.exit_code);
    }
    return code;
  }
  const auto cfg = load(path, g);
  const auto out = run_scenario(cfg, ro);
  print_outcome(out, cfg, g);
  return out.exit_code;
}

int cmd_trace(const std::string& path, int family, double x0, double t0, const Globals& g) {
  const auto traj = Trajectory::load(path);
  const auto cfg = from_trajectory(traj, path, g);
  const History h(traj, cfg.scenario.law, cfg.scenario.spec.profile);
  const auto p = trace(h, x0, family, t0);
  const auto res = riccati_residual(p, h.dx(), h.x_max());
  const auto b = bound_check(p, cfg.scenario.problem, cfg.bounds.delta1, cfg.bounds.M,
                             cfg.bounds.alpha, &res, cfg.monitors.residual_floor);
  std::ostringstream csv;
  write_paths_csv(csv, {p});
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    std::ofstream(std::filesystem::path(g.out) / "path.csv") << csv.str();
  } else if (!g.quiet) {
    std::cout << csv.str();
  }
  std::cerr << "exit: " << p.exit_reason << " at t=" << p.exit_t << ", x=" << p.exit_x
            << "; samples " << p.samples.size() << ", residual max " << res.max_abs
            << "; lower " << b.lower.value << ", upper " << b.upper.value << ", subsolution "
            << b.subsolution.value << '\n';
  return b.pass() ? kExitOk : kExitMonitor;
}

int cmd_verify(const std::string& path, const Globals& g) {
  const auto traj = Trajectory::load(path);
  const auto cfg = from_trajectory(traj, path, g);
  const Solver solver(cfg.scenario);
  Monitor monitor(solver, cfg);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& s = traj.snapshots[k];
    Field f{s.t, s.z, s.w, s.z_b, s.w_b};
    monitor.observe(f, k, 0.0);
  }
  const auto mon = monitor.take();
  const History h(traj, cfg.scenario.law, cfg.scenario.spec.profile);
  const auto ch = characteristic_pass(h, cfg, mon);
  std::cout << "monitors " << (mon.pass() ? "PASS" : "FAIL") << ": min margin "
            << mon.min_margin_raw << " (adjusted " << mon.min_margin_adjusted << "), min gap "
            << mon.min_gap << '\n';
  if (traj.stride == 1)
    std::cout << "conservative residual: mass " << mon.mass_linf_max << ", momentum "
              << mon.momentum_linf_max << '\n';
  for (const auto* f : {&ch.phi, &ch.psi}) {
    std::cout << "family " << f->family << ": " << f->paths << " paths, residual max "
              << f->residual_max << ", lower " << (f->lower_pass ? "PASS" : "FAIL") << ", upper "
              << (f->upper_pass ? "PASS" : "FAIL") << ", subsolution "
              << (f->subsolution_pass ? "PASS" : "FAIL") << '\n';
    if (!g.quiet)
      for (const auto& s : f->failures) std::cout << "  " << s << '\n';
  }
  std::cout << "derivative bound " << (ch.derivative_pass ? "PASS" : "FAIL") << ": |z_x| "
            << mon.max_z_x << " <= " << ch.z_x_bound << ", |w_x| " << mon.max_w_x
            << " <= " << ch.w_x_bound << '\n';
  return mon.pass() && ch.pass() ? kExitOk : kExitMonitor;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isentropic nozzle flow: certificates, solver and characteristic verifier"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed recorded in reports");
  app.add_flag("--quiet", g.quiet, "Print summaries only");
  app.add_option("--override", g.overrides, "section.key=value applied to the configuration");

  std::string gamma, path, kind;
  double I = 0.0, x0 = 0.0, t0 = 0.0;
  int family = 1;
  auto* constants = app.add_subcommand("constants", "Print l, sigma1, sigma2 for a gas law");
  constants->add_option("gamma", gamma)->required();
  auto* check = app.add_subcommand("check", "Certify a scenario without running it");
  check->add_option("config", path)->required();
  auto* feasible = app.add_subcommand("feasible", "Search region constants for given gamma and I");
  feasible->add_option("gamma", gamma)->required();
  feasible->add_option("I", I)->required();
  feasible->add_option("kind", kind)->required();
  auto* simulate = app.add_subcommand("simulate", "Certify, run and verify a scenario or directory");
  simulate->add_option("config", path)->required();
  auto* tr = app.add_subcommand("trace", "Trace one characteristic through a stored trajectory");
  tr->add_option("trajectory", path)->required();
  tr->add_option("--family", family)->check(CLI::IsMember({1, 2}));
  tr->add_option("--x0", x0)->required();
  tr->add_option("--t0", t0);
  auto* verify = app.add_subcommand("verify", "Residuals and bounds for a stored trajectory");
  verify->add_option("trajectory", path)->required();
  for (auto* sub : {constants, check, feasible, simulate, tr, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*constants) return cmd_constants(gamma);
    if (*check) return cmd_check(path, g);
    if (*feasible) return cmd_feasible(gamma, I, kind, g);
    if (*simulate) return cmd_simulate(path, g);
    if (*tr) return cmd_trace(path, family, x0, t0, g);
    if (*verify) return cmd_verify(path, g);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  std::cerr << app.help();
  return kExitUsage;
}
