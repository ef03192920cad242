#include "cnls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cnls/error.hpp"

namespace cnls {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"a", "N"}},
      {"params", {"mu1", "mu2", "beta"}},
      {"soliton1", {"omega", "v", "x0", "gamma"}},
      {"soliton2", {"omega", "v", "x0", "gamma"}},
      {"run",
       {"t0", "t_final", "tau", "snapshot_stride", "diagnostics_stride", "cutoff_L",
        "velocity_window"}},
      {"output", {"directory", "formats"}},
      {"groundstate", {"masses", "a", "N", "tau", "tol", "max_iter"}},
  };
  return keys;
}

const std::vector<std::string> kRequiredSections{"grid", "params", "soliton1", "soliton2", "run"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string location(const ConfigDocument::Entry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) : "command line";
}

double to_double(const ConfigDocument::Entry& e, const std::string& name) {
  const std::string_view text = trim(e.value);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw ConfigError(location(e) + ": '" + name + "' expects a number, got '" + e.value + "'");
  }
  return value;
}

std::size_t to_count(const ConfigDocument::Entry& e, const std::string& name) {
  const std::string_view text = trim(e.value);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(location(e) + ": '" + name + "' expects a non-negative integer, got '" +
                      e.value + "'");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

  const ConfigDocument::Entry& require(const std::string& section, const std::string& key) const {
    if (!doc_.has_section(section)) throw ConfigError("missing section [" + section + "]");
    const auto* e = doc_.find(section, key);
    if (!e) throw ConfigError("missing key '" + key + "' in section [" + section + "]");
    return *e;
  }

  double number(const std::string& section, const std::string& key) const {
    return to_double(require(section, key), section + "." + key);
  }
  double number(const std::string& section, const std::string& key, double fallback) const {
    const auto* e = doc_.find(section, key);
    return e ? to_double(*e, section + "." + key) : fallback;
  }
  std::size_t count(const std::string& section, const std::string& key) const {
    return to_count(require(section, key), section + "." + key);
  }
  std::size_t count(const std::string& section, const std::string& key,
                    std::size_t fallback) const {
    const auto* e = doc_.find(section, key);
    return e ? to_count(*e, section + "." + key) : fallback;
  }
  const ConfigDocument::Entry* find(const std::string& section, const std::string& key) const {
    return doc_.find(section, key);
  }

 private:
  const ConfigDocument& doc_;
};

SolitonSpec read_soliton(const Reader& r, const std::string& section, int component) {
  SolitonSpec s;
  s.component = component;
  s.omega = r.number(section, "omega");
  s.v = r.number(section, "v");
  s.x0 = r.number(section, "x0", 0.0);
  s.gamma = r.number(section, "gamma", 0.0);
  return s;
}

}  // namespace

bool OutputConfig::wants(std::string_view format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

GroundStateOptions GroundStateConfig::options_for(const MassTargets& targets,
                                                  const CoupledParams& params) const {
  GroundStateOptions o;
  o.grid.half_width = half_width.value_or(default_half_width(targets, params));
  o.grid.intervals = intervals.value_or(
      static_cast<std::size_t>(std::llround(2.0 * o.grid.half_width * 16.0)));
  o.tau = tau;
  o.tol = tol;
  o.max_iter = max_iter;
  return o;
}

void RunConfig::validate() const {
  GridSpec(grid.a, grid.N);
  params.validate();
  soliton1.validate();
  soliton2.validate();
  if (!(run.t_final > run.t0)) throw ConfigError("run.t_final must exceed run.t0");
  if (!(run.tau > 0.0)) throw ConfigError("run.tau must be positive");
  if (!(run.cutoff_L > 0.0)) throw ConfigError("run.cutoff_L must be positive");
  if (!(run.velocity_window > 0.0) || run.velocity_window > 1.0) {
    throw ConfigError("run.velocity_window must lie in (0, 1]");
  }
  for (const auto& f : output.formats) {
    if (f != "csv" && f != "json") throw ConfigError("output.formats: unknown format '" + f + "'");
  }
  if (groundstate) {
    const auto& g = *groundstate;
    if (!g.from_left_split && (!(g.masses.a1_sq > 0.0) || !(g.masses.a2_sq > 0.0))) {
      throw ConfigError("groundstate.masses must be positive");
    }
    if (!(g.tau > 0.0) || !(g.tol > 0.0)) {
      throw ConfigError("groundstate.tau and groundstate.tol must be positive");
    }
    if (g.half_width && !(*g.half_width > 0.0)) throw ConfigError("groundstate.a must be positive");
    if (g.intervals && *g.intervals < 4) throw ConfigError("groundstate.N must be at least 4");
  }
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) {
        throw ConfigError(where + ": unknown section [" + section + "]");
      }
      if (doc.sections_.contains(section)) {
        throw ConfigError(where + ": duplicate section [" + section + "]");
      }
      doc.sections_[section];
      doc.order_.push_back(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!schema().at(section).contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
    }
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    auto& entries = doc.sections_[section];
    if (entries.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    entries[key] = Entry{value, line_no};
  }
  return doc;
}

void ConfigDocument::set(const std::string& section, const std::string& key, std::string value) {
  const auto it = schema().find(section);
  if (it == schema().end() || !it->second.contains(key)) {
    throw ConfigError("command line: unknown key '" + section + "." + key + "'");
  }
  if (!sections_.contains(section)) order_.push_back(section);
  sections_[section][key] = Entry{std::move(value), 0};
}

void ConfigDocument::apply_override(std::string_view assignment) {
  while (!assignment.empty() && assignment.front() == '-') assignment.remove_prefix(1);
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq) {
    throw ConfigError("command line: override must look like --section.key=value, got '" +
                      std::string(assignment) + "'");
  }
  set(std::string(trim(assignment.substr(0, dot))),
      std::string(trim(assignment.substr(dot + 1, eq - dot - 1))),
      std::string(trim(assignment.substr(eq + 1))));
}

bool ConfigDocument::has_section(const std::string& section) const {
  return sections_.contains(section);
}

const ConfigDocument::Entry* ConfigDocument::find(const std::string& section,
                                                  const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

RunConfig build_config(const ConfigDocument& doc) {
  for (const auto& section : kRequiredSections) {
    if (!doc.has_section(section)) throw ConfigError("missing section [" + section + "]");
  }
  const Reader r(doc);
  RunConfig c;
  c.grid.a = r.number("grid", "a");
  c.grid.N = r.count("grid", "N");
  c.params.mu1 = r.number("params", "mu1");
  c.params.mu2 = r.number("params", "mu2");
  c.params.beta = r.number("params", "beta");
  c.soliton1 = read_soliton(r, "soliton1", 1);
  c.soliton2 = read_soliton(r, "soliton2", 2);

  c.run.t0 = r.number("run", "t0");
  c.run.t_final = r.number("run", "t_final");
  c.run.tau = r.number("run", "tau");
  c.run.snapshot_stride = r.count("run", "snapshot_stride", c.run.snapshot_stride);
  c.run.diagnostics_stride = r.count("run", "diagnostics_stride", c.run.diagnostics_stride);
  c.run.cutoff_L = r.number("run", "cutoff_L", c.run.cutoff_L);
  c.run.velocity_window = r.number("run", "velocity_window", c.run.velocity_window);

  if (const auto* dir = r.find("output", "directory")) c.output.directory = dir->value;
  if (const auto* formats = r.find("output", "formats")) {
    c.output.formats = split_list(formats->value);
  }

  if (doc.has_section("groundstate")) {
    GroundStateConfig g;
    const auto& masses = r.require("groundstate", "masses");
    if (trim(masses.value) == "from-left-split") {
      g.from_left_split = true;
    } else {
      const auto items = split_list(masses.value);
      if (items.size() != 2) {
        throw ConfigError(location(masses) +
                          ": groundstate.masses expects 'a1_sq, a2_sq' or 'from-left-split'");
      }
      g.masses.a1_sq = to_double({items[0], masses.line}, "groundstate.masses");
      g.masses.a2_sq = to_double({items[1], masses.line}, "groundstate.masses");
    }
    if (const auto* a = r.find("groundstate", "a")) g.half_width = to_double(*a, "groundstate.a");
    if (const auto* n = r.find("groundstate", "N")) g.intervals = to_count(*n, "groundstate.N");
    g.tau = r.number("groundstate", "tau", g.tau);
    g.tol = r.number("groundstate", "tol", g.tol);
    g.max_iter = r.count("groundstate", "max_iter", g.max_iter);
    c.groundstate = g;
  }

  c.validate();
  return c;
}

RunConfig parse_config(std::string_view text) { return build_config(ConfigDocument::parse(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> preset_files() {
  auto make = [](const std::string& title, double a, std::size_t n, double beta, double omega1,
                 double omega2, double v1, double v2, double t_final, const std::string& extra) {
    std::ostringstream s;
    s << "# " << title << "\n"
      << "[grid]\na = " << a << "\nN = " << n << "\n\n"
      << "[params]\nmu1 = 1\nmu2 = 1\nbeta = " << beta << "\n\n"
      << "[soliton1]\nomega = " << omega1 << "\nv = " << v1 << "\nx0 = 0\ngamma = 0\n\n"
      << "[soliton2]\nomega = " << omega2 << "\nv = " << v2 << "\nx0 = 0\ngamma = 0\n\n"
      << "[run]\nt0 = -10\nt_final = " << t_final << "\ntau = 0.001\n"
      << "snapshot_stride = 1000\ndiagnostics_stride = 100\ncutoff_L = 4\n\n"
      << "[output]\ndirectory = " << title.substr(0, title.find(' ')) << "-output\n"
      << "formats = csv, json\n"
      << extra;
    return s.str();
  };
  return {
      {"elastic.cfg", make("elastic collision, integrable case", 20, 1024, 1, 5, 1, 1, -1, 10, "")},
      {"symmetric.cfg",
       make("symmetric collision with mass extraction", 200, 4096, 3, 1, 1, 2, -2, 40,
            "\n[groundstate]\nmasses = from-left-split\ntau = 0.1\ntol = 1e-8\n")},
      {"dispersive.cfg",
       make("dispersive inelastic collision", 500, 8192, -1, 1, 1, 2.7, -2.7, 90, "")},
      {"reflexion.cfg", make("reflexion", 20, 1024, -1, 1, 1, 0.5, -0.5, 10, "")},
  };
}

}  // namespace cnls
