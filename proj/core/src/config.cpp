#include "thinfilm/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "thinfilm/error.hpp"

namespace thinfilm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s.empty()) throw ConfigError(key, "empty value");
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw ConfigError(key, "not a number: '" + s + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s.empty() || s.front() == '-') throw ConfigError(key, "expected a nonnegative integer, got '" + s + "'");
  char* end = nullptr;
  errno = 0;
  const unsigned long long x = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + s + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected true/false, got '" + s + "'");
}

// "t0:g0, t1:g1, ..."
void parse_table(const std::string& key, const std::string& v, std::vector<double>& ts, std::vector<double>& gs) {
  ts.clear();
  gs.clear();
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError(key, "expected t:g pairs, got '" + item + "'");
    ts.push_back(parse_double(key, item.substr(0, colon)));
    gs.push_back(parse_double(key, item.substr(colon + 1)));
  }
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

FluidModel ModelSpec::build() const {
  if (kind == "power-law" || kind == "power" || kind == "powerlaw") return FluidModel::power_law(alpha, a, eps_reg);
  if (kind == "ellis") return FluidModel::ellis(alpha, b, c, eps_reg);
  throw ConfigError("model.kind", "expected power-law or ellis, got '" + kind + "'");
}

Force ForceSpec::build(double length) const {
  const CosineProfile space{A, B, m};
  if (kind == "none" || kind == "zero") return Force::none(length);
  if (kind == "constant") return Force::constant(f0, length);
  if (kind == "static") return Force::time_independent(space, length);
  if (kind == "exp") return Force::time_dependent(ExpDecay{kappa}, space, length);
  if (kind == "power") return Force::time_dependent(PowerDecay{beta}, space, length);
  if (kind == "tabulated") return Force::time_dependent(Tabulated(table_t, table_g), space, length);
  throw ConfigError("force.kind", "expected none, exp, power, static, constant or tabulated, got '" + kind + "'");
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  auto num = [&] { return parse_double(key, value); };

  static const std::map<std::string, std::function<void(ExperimentConfig&, const std::string&, const std::string&)>>
      setters = {
          {"name", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.name = v; }},
          {"seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.seed = parse_uint(k, v); }},
          {"model.kind", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.model.kind = v; }},
          {"control.scheme",
           [](ExperimentConfig& c, const std::string&, const std::string& v) { c.control.scheme = parse_scheme(v); }},
          {"control.stop_on_extinction",
           [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.control.stop_on_extinction = parse_bool(k, v);
           }},
          {"control.max_steps",
           [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.control.max_steps = parse_uint(k, v);
           }},
          {"grid.N",
           [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.N = static_cast<std::size_t>(parse_uint(k, v));
           }},
          {"force.kind", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.force.kind = v; }},
          {"force.table",
           [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             parse_table(k, v, c.force.table_t, c.force.table_g);
           }},
          {"output.csv", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output.csv = v; }},
          {"output.svg_profiles",
           [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output.svg_profiles = v; }},
          {"output.svg_error",
           [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output.svg_error = v; }},
          {"output.report_json",
           [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output.report_json = v; }},
          {"output.report_text",
           [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output.report_text = v; }},
      };
  if (const auto it = setters.find(key); it != setters.end()) {
    it->second(*this, key, value);
    return;
  }

  const std::map<std::string, double*> numbers = {
      {"model.alpha", &model.alpha},       {"model.a", &model.a},
      {"model.b", &model.b},               {"model.c", &model.c},
      {"model.eps_reg", &model.eps_reg},   {"grid.L", &L},
      {"u0.A", &u0.A},                     {"u0.B", &u0.B},
      {"u0.m", &u0.m},                     {"force.kappa", &force.kappa},
      {"force.beta", &force.beta},         {"force.A", &force.A},
      {"force.B", &force.B},               {"force.m", &force.m},
      {"force.f0", &force.f0},             {"control.t_end", &control.t_end},
      {"control.cfl", &control.cfl},       {"control.dt_max", &control.dt_max},
      {"control.record_every", &control.record_every},
      {"control.tol_extinct", &control.tol_extinct},
      {"control.change_tol", &control.change_tol},
  };
  if (const auto it = numbers.find(key); it != numbers.end()) {
    *it->second = num();
    return;
  }
  throw ConfigError(key, "unknown configuration key");
}

void ExperimentConfig::apply_overrides(const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ConfigError(trim(a), "override must look like key=value");
    set(a.substr(0, eq), a.substr(eq + 1));
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) { return parse(text, ExperimentConfig{}); }

ExperimentConfig ExperimentConfig::parse(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key == "preset") {
      base = preset(trim(line.substr(eq + 1)));
      continue;
    }
    base.set(key, line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "name = " << name << "\n"
     << "seed = " << seed << "\n\n"
     << "model.kind = " << model.kind << "\n"
     << "model.alpha = " << fmt(model.alpha) << "\n";
  if (model.kind == "ellis") {
    os << "model.b = " << fmt(model.b) << "\nmodel.c = " << fmt(model.c) << "\n";
  } else {
    os << "model.a = " << fmt(model.a) << "\n";
  }
  os << "model.eps_reg = " << fmt(model.eps_reg) << "\n\n"
     << "grid.L = " << fmt(L) << "\n"
     << "grid.N = " << N << "\n\n"
     << "u0.A = " << fmt(u0.A) << "\n"
     << "u0.B = " << fmt(u0.B) << "\n"
     << "u0.m = " << fmt(u0.m) << "\n\n"
     << "force.kind = " << force.kind << "\n";
  if (force.kind == "constant") {
    os << "force.f0 = " << fmt(force.f0) << "\n";
  } else if (force.kind != "none" && force.kind != "zero") {
    if (force.kind == "exp") os << "force.kappa = " << fmt(force.kappa) << "\n";
    if (force.kind == "power") os << "force.beta = " << fmt(force.beta) << "\n";
    if (force.kind == "tabulated") {
      os << "force.table = ";
      for (std::size_t k = 0; k < force.table_t.size(); ++k) {
        os << (k ? ", " : "") << fmt(force.table_t[k]) << ":" << fmt(force.table_g[k]);
      }
      os << "\n";
    }
    os << "force.A = " << fmt(force.A) << "\nforce.B = " << fmt(force.B) << "\nforce.m = " << fmt(force.m) << "\n";
  }
  os << "\ncontrol.t_end = " << fmt(control.t_end) << "\n"
     << "control.cfl = " << fmt(control.cfl) << "\n"
     << "control.dt_max = " << fmt(control.dt_max) << "\n"
     << "control.record_every = " << fmt(control.record_every) << "\n"
     << "control.tol_extinct = " << fmt(control.tol_extinct) << "\n"
     << "control.change_tol = " << fmt(control.change_tol) << "\n"
     << "control.scheme = " << to_string(control.scheme) << "\n"
     << "control.stop_on_extinction = " << (control.stop_on_extinction ? "true" : "false") << "\n";
  const std::pair<const char*, const std::string*> outs[] = {
      {"output.csv", &output.csv},
      {"output.svg_profiles", &output.svg_profiles},
      {"output.svg_error", &output.svg_error},
      {"output.report_json", &output.report_json},
      {"output.report_text", &output.report_text},
  };
  bool first = true;
  for (const auto& [k, v] : outs) {
    if (v->empty()) continue;
    if (first) os << "\n";
    first = false;
    os << k << " = " << *v << "\n";
  }
  return os.str();
}

void ExperimentConfig::validate() const {
  (void)fluid();
  const Grid g = grid();
  u0.validate(L, "u0");
  if (!(u0.min_value() > 0.0)) throw ConfigError("u0.B", "initial film must be positive: A - |B| <= 0");
  try {
    (void)forcing();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DryOut) throw;
    std::ostringstream os;
    os << "force.f0 = " << force.f0 << " < 0: the film dries out at T* = -mean(u0)/f0 = " << (-u0.A / force.f0)
       << "; negative constant forces are not evolved";
    throw Error(ErrorKind::DryOut, os.str());
  }
  control.validate();
  (void)g;
}

Field ExperimentConfig::initial_field() const {
  return grid().sample([&](double x) { return u0(x); });
}

namespace {

struct PresetEntry {
  const char* name;
  const char* summary;
  std::function<void(ExperimentConfig&)> apply;
};

void decaying_base(ExperimentConfig& c) {
  c.model.kind = "power-law";
  c.L = 200.0;
  c.N = 400;
  c.u0 = {3.0, 0.01, 10.0};
  c.force.kind = "exp";
  c.force.kappa = 1.0;
  c.force.A = 1.0;
  c.force.B = 0.01;
  c.force.m = 10.0;
}

void constant_base(ExperimentConfig& c, double f0) {
  c.model.kind = "power-law";
  c.L = 100.0;
  c.N = 200;
  c.u0 = {3.0, 0.1, 10.0};
  c.force.kind = "constant";
  c.force.f0 = f0;
}

const std::vector<PresetEntry>& presets() {
  static const std::vector<PresetEntry> table = {
      {"example-8.1", "alpha=0.5, L=200, decaying force e^-t (1+0.01cos(pi x/10)), T=6",
       [](ExperimentConfig& c) {
         decaying_base(c);
         c.model.alpha = 0.5;
         c.control.t_end = 6.0;
         c.control.record_every = 0.02;
       }},
      {"example-8.2", "alpha=1.5, otherwise as example-8.1, T=800",
       [](ExperimentConfig& c) {
         decaying_base(c);
         c.model.alpha = 1.5;
         c.control.t_end = 800.0;
         c.control.record_every = 1.0;
       }},
      {"example-8.3i", "alpha=0.5, L=100, constant force f0=1, T=1.2",
       [](ExperimentConfig& c) {
         constant_base(c, 1.0);
         c.model.alpha = 0.5;
         c.control.t_end = 1.2;
         c.control.record_every = 0.005;
       }},
      {"example-8.3ii", "alpha=1, constant force f0=1, T=5",
       [](ExperimentConfig& c) {
         constant_base(c, 1.0);
         c.model.alpha = 1.0;
         c.control.t_end = 5.0;
         c.control.record_every = 0.02;
       }},
      {"example-8.3iii", "alpha=1.5, constant force f0=1, T=15",
       [](ExperimentConfig& c) {
         constant_base(c, 1.0);
         c.model.alpha = 1.5;
         c.control.t_end = 15.0;
         c.control.record_every = 0.05;
       }},
      {"example-8.4i", "alpha=0.5, no force, T=8",
       [](ExperimentConfig& c) {
         constant_base(c, 0.0);
         c.model.alpha = 0.5;
         c.control.t_end = 8.0;
         c.control.record_every = 0.02;
       }},
      {"example-8.4ii", "alpha=1, no force, T=20",
       [](ExperimentConfig& c) {
         constant_base(c, 0.0);
         c.model.alpha = 1.0;
         c.control.t_end = 20.0;
         c.control.record_every = 0.05;
       }},
      {"example-8.4iii", "alpha=1.5, no force, T=800",
       [](ExperimentConfig& c) {
         constant_base(c, 0.0);
         c.model.alpha = 1.5;
         c.control.t_end = 800.0;
         c.control.record_every = 1.0;
       }},
      {"ellis-newtonian", "Ellis alpha=2, b=c=1, no force, L=100, u0=3+0.01cos(pi x/10), T=30",
       [](ExperimentConfig& c) {
         c.model.kind = "ellis";
         c.model.alpha = 2.0;
         c.model.b = 1.0;
         c.model.c = 1.0;
         c.L = 100.0;
         c.N = 200;
         c.u0 = {3.0, 0.01, 10.0};
         c.force.kind = "constant";
         c.force.f0 = 0.0;
         c.control.t_end = 30.0;
         c.control.record_every = 0.1;
       }},
  };
  return table;
}

const PresetEntry& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (name == p.name) return p;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.emplace_back(p.name);
  return names;
}

std::string preset_summary(const std::string& name) { return find_preset(name).summary; }

ExperimentConfig preset(const std::string& name) {
  const PresetEntry& p = find_preset(name);
  ExperimentConfig c;
  c.name = p.name;
  p.apply(c);
  return c;
}

}  // namespace thinfilm
