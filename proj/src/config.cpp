#include "nozzle/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario", {"problem", "gamma", "seed", "name"}},
      {"profile",
       {"family", "amp", "rate", "power", "freq", "margin", "eps", "table_x", "table_a",
        "envelope_window", "tail_bound", "k1", "k2", "alpha", "M"}},
      {"region", {"kind", "constants", "L1", "L2", "U1", "U2"}},
      {"data",
       {"z0", "w0", "rho0", "v0", "table_x", "table_z", "table_w", "zB", "wB", "delta1",
        "delta2"}},
      {"solver",
       {"n", "x_interest", "T", "cfl", "order", "stride", "x_max", "blowup_threshold",
        "mutate_w_source"}},
      {"monitors",
       {"lip_factor", "fan", "boundary_launches", "residual_floor", "strict_margin",
        "hypothesis_x_max", "hypothesis_samples", "compatibility_tol", "data_samples",
        "override"}},
      {"output", {"dir", "trajectory", "csv_every"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_key(const std::string& section, const std::string& key, std::size_t line) {
  const auto it = schema().find(section);
  if (it == schema().end()) throw ConfigError("unknown section [" + section + "]", line);
  if (!it->second.count(key))
    throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
}

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto cut = raw.find_first_of("#;");
    const std::string s = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("malformed section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section)) throw ConfigError("unknown section [" + section + "]", line);
      doc[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (section.empty()) throw ConfigError("key outside of any section", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    check_key(section, key, line);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line);
    if (doc[section].count(key)) throw ConfigError("duplicate key '" + key + "'", line);
    doc[section][key] = {value, line};
  }
  return doc;
}

void apply_override(Document& doc, const std::string& spec) {
  const auto eq = spec.find('=');
  const auto dot = spec.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("override must look like section.key=value: " + spec);
  const std::string section = trim(spec.substr(0, dot));
  const std::string key = trim(spec.substr(dot + 1, eq - dot - 1));
  const std::string value = trim(spec.substr(eq + 1));
  check_key(section, key, 0);
  if (value.empty()) throw ConfigError("empty override value for " + section + "." + key);
  auto& entry = doc[section][key];
  entry.value = value;
}

class Reader {
 public:
  explicit Reader(const Document& doc) : doc_(doc) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }
  bool has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
  }
  const Entry& need(const std::string& section, const std::string& key) const {
    const auto* e = find(section, key);
    if (!e) throw ConfigError("missing required key '" + key + "' in [" + section + "]");
    return *e;
  }
  std::string text(const std::string& section, const std::string& key,
                   const std::string& fallback) const {
    const auto* e = find(section, key);
    return e ? e->value : fallback;
  }
  double number(const Entry& e) const {
    try {
      const auto ex = Expression::parse(e.value);
      if (ex.uses_x() || ex.uses_t()) throw ConfigError("expected a constant", e.line);
      return ex.eval(0.0, 0.0);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& err) {
      throw ConfigError(std::string("bad number '") + e.value + "': " + err.what(), e.line);
    }
  }
  double number(const std::string& section, const std::string& key, double fallback) const {
    const auto* e = find(section, key);
    return e ? number(*e) : fallback;
  }
  double need_number(const std::string& section, const std::string& key) const {
    return number(need(section, key));
  }
  std::size_t count(const std::string& section, const std::string& key,
                    std::size_t fallback) const {
    const auto* e = find(section, key);
    if (!e) return fallback;
    const double v = number(*e);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e12)
      throw ConfigError("'" + key + "' must be a nonnegative integer", e->line);
    return static_cast<std::size_t>(v);
  }
  bool flag(const std::string& section, const std::string& key, bool fallback) const {
    const auto* e = find(section, key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    throw ConfigError("'" + key + "' must be true or false", e->line);
  }
  Expression expression(const Entry& e) const {
    try {
      return Expression::parse(e.value);
    } catch (const Error& err) {
      throw ConfigError(std::string("bad expression for '") + e.value + "': " + err.what(),
                        e.line);
    }
  }
  std::vector<double> list(const Entry& e) const {
    std::string s = e.value;
    for (auto& c : s)
      if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(number(Entry{tok, e.line}));
    if (out.empty()) throw ConfigError("empty list", e.line);
    return out;
  }

 private:
  const Document& doc_;
};

template <class F>
auto at_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), line);
  }
}

ProfileParams read_profile(const Reader& r) {
  ProfileParams p;
  const auto& fam = r.need("profile", "family");
  p.family = at_line(fam.line, [&] { return parse_profile_family(fam.value); });
  p.amp = r.number("profile", "amp", 0.0);
  p.rate = r.number("profile", "rate", p.rate);
  p.power = r.number("profile", "power", p.power);
  p.freq = r.number("profile", "freq", p.freq);
  p.margin = r.number("profile", "margin", p.margin);
  p.eps = r.number("profile", "eps", p.eps);
  p.envelope_window = static_cast<int>(r.count("profile", "envelope_window", 1));
  if (r.has("profile", "tail_bound")) p.tail_bound = r.need_number("profile", "tail_bound");
  if (p.family == ProfileFamily::Table) {
    p.table_x = r.list(r.need("profile", "table_x"));
    p.table_a = r.list(r.need("profile", "table_a"));
  } else if (r.has("profile", "table_x") || r.has("profile", "table_a")) {
    throw ConfigError("table_x/table_a need family = table", r.find("profile", "table_x")
                                                                 ? r.find("profile", "table_x")->line
                                                                 : r.find("profile", "table_a")->line);
  }
  p.decay.k1 = r.number("profile", "k1", p.decay.k1);
  p.decay.k2 = r.number("profile", "k2", p.decay.k2);
  p.decay.alpha = r.number("profile", "alpha", p.decay.alpha);
  p.decay.M = r.number("profile", "M", p.decay.M);
  return p;
}

InitialData read_initial(const Reader& r, const GasLaw& law) {
  const bool riemann = r.has("data", "z0") || r.has("data", "w0");
  const bool primitive = r.has("data", "rho0") || r.has("data", "v0");
  const bool table = r.has("data", "table_x");
  if (int(riemann) + int(primitive) + int(table) != 1)
    throw ConfigError("[data] needs exactly one of z0/w0, rho0/v0 or table_x/table_z/table_w");
  if (riemann)
    return InitialData::riemann(r.expression(r.need("data", "z0")),
                                r.expression(r.need("data", "w0")));
  if (primitive)
    return InitialData::primitive(r.expression(r.need("data", "rho0")),
                                  r.expression(r.need("data", "v0")), law);
  const auto& tx = r.need("data", "table_x");
  return at_line(tx.line, [&] {
    return InitialData::table(r.list(tx), r.list(r.need("data", "table_z")),
                              r.list(r.need("data", "table_w")));
  });
}

std::string render(const Document& doc) {
  std::ostringstream os;
  for (const auto& [section, entries] : doc) {
    os << '[' << section << "]\n";
    for (const auto& [key, e] : entries) os << key << " = " << e.value << '\n';
  }
  return os.str();
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& name,
                            const ConfigOverrides& overrides) {
  Document doc = parse_document(text);
  for (const auto& o : overrides) apply_override(doc, o);
  const Reader r(doc);

  ScenarioConfig cfg;
  cfg.text = overrides.empty() ? text : render(doc);
  cfg.name = r.text("scenario", "name", name);
  cfg.seed = r.count("scenario", "seed", 0);
  auto& sc = cfg.scenario;

  const auto& prob = r.need("scenario", "problem");
  sc.problem = at_line(prob.line, [&] { return parse_problem(prob.value); });
  if (const auto* g = r.find("scenario", "gamma"))
    sc.law = at_line(g->line, [&] { return GasLaw::parse(g->value); });

  const auto cc = critical_constants(sc.law);
  const auto params = read_profile(r);
  sc.spec.profile = at_line(r.need("profile", "family").line,
                            [&] { return std::make_shared<const NozzleProfile>(params, cc.l); });

  sc.spec.kind = kind_for(sc.problem);
  if (const auto* k = r.find("region", "kind")) {
    const auto kind = at_line(k->line, [&] { return parse_region_kind(k->value); });
    if (kind != sc.spec.kind)
      throw ConfigError(std::string("region kind ") + to_string(kind) + " does not match problem " +
                            to_string(sc.problem),
                        k->line);
  }
  cfg.monitors.strict_margin = r.number("monitors", "strict_margin", cfg.monitors.strict_margin);
  const std::string mode = r.text("region", "constants", "explicit");
  if (mode == "auto") {
    for (const char* key : {"L1", "L2", "U1", "U2"})
      if (r.has("region", key))
        throw ConfigError(std::string(key) + " given with constants = auto",
                          r.find("region", key)->line);
    auto res = find_constants(sc.law, sc.spec.I(), sc.spec.kind, cfg.monitors.strict_margin);
    sc.spec.c = res.constants;
    cfg.feasibility = std::move(res);
  } else if (mode == "explicit") {
    sc.spec.c.L1 = r.need_number("region", "L1");
    sc.spec.c.L2 = r.need_number("region", "L2");
    sc.spec.c.U1 = r.need_number("region", "U1");
    sc.spec.c.U2 = r.need_number("region", "U2");
  } else {
    throw ConfigError("constants must be auto or explicit", r.find("region", "constants")->line);
  }

  sc.initial = read_initial(r, sc.law);
  const bool has_b = r.has("data", "zB") || r.has("data", "wB");
  if (has_b) {
    const auto& zb = r.need("data", "zB");
    const auto& wb = r.need("data", "wB");
    sc.boundary = at_line(zb.line, [&] {
      return BoundaryData(r.expression(zb), r.expression(wb));
    });
  }
  if (sc.problem == Problem::P2 && !has_b) throw ConfigError("P2 needs zB and wB in [data]");
  if (sc.problem != Problem::P2 && has_b)
    throw ConfigError("boundary data is only meaningful for P2", r.find("data", "zB")
                                                                     ? r.find("data", "zB")->line
                                                                     : r.find("data", "wB")->line);

  cfg.bounds.delta1 = r.need_number("data", "delta1");
  cfg.bounds.delta2 = r.need_number("data", "delta2");
  cfg.bounds.M = params.decay.M;
  cfg.bounds.alpha = params.decay.alpha;

  auto& o = sc.options;
  o.n = r.count("solver", "n", o.n);
  o.x_interest = r.number("solver", "x_interest", o.x_interest);
  o.T = r.number("solver", "T", o.T);
  o.cfl = r.number("solver", "cfl", o.cfl);
  o.order = static_cast<int>(r.count("solver", "order", 1));
  o.snapshot_stride = r.count("solver", "stride", 1);
  o.x_max = r.number("solver", "x_max", 0.0);
  o.blowup_threshold = r.number("solver", "blowup_threshold", o.blowup_threshold);
  o.mutate_w_source = r.flag("solver", "mutate_w_source", false);
  if (o.order != 1 && o.order != 2) throw ConfigError("order must be 1 or 2", r.need("solver", "order").line);
  if (!(o.cfl > 0.0))
    throw ConfigError("cfl must be positive", r.find("solver", "cfl") ? r.find("solver", "cfl")->line : 0);

  auto& m = cfg.monitors;
  m.lip_factor = r.number("monitors", "lip_factor", m.lip_factor);
  m.fan = r.count("monitors", "fan", m.fan);
  m.boundary_launches = r.flag("monitors", "boundary_launches", m.boundary_launches);
  m.residual_floor = r.number("monitors", "residual_floor", m.residual_floor);
  m.hypothesis_x_max = r.number("monitors", "hypothesis_x_max", m.hypothesis_x_max);
  m.hypothesis_samples = r.count("monitors", "hypothesis_samples", m.hypothesis_samples);
  m.compatibility_tol = r.number("monitors", "compatibility_tol", m.compatibility_tol);
  m.data_samples = r.count("monitors", "data_samples", m.data_samples);
  m.override_certificate = r.flag("monitors", "override", false);

  cfg.output.dir = r.text("output", "dir", cfg.output.dir);
  cfg.output.save_trajectory = r.flag("output", "trajectory", cfg.output.save_trajectory);
  cfg.output.csv_every = std::max<std::size_t>(r.count("output", "csv_every", cfg.output.csv_every), 1);
  return cfg;
}

ScenarioConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_config(ss.str(), name, overrides);
}

}  // namespace nozzle
