#include "mhds/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mhds/diagnostics.hpp"

namespace mhds {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key + ": trailing junk in '" + v + "'");
  return out;
}

int to_int(const std::string& v, const std::string& key) {
  const double d = to_double(v, key);
  const int i = static_cast<int>(std::lround(d));
  if (d != static_cast<double>(i)) throw ConfigError(key + ": expected an integer");
  return i;
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected true/false");
}

std::vector<std::string> split_ws(const std::string& v) {
  std::istringstream is(v);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::array<int, 3> to_ivec3(const std::string& v, const std::string& key) {
  const auto toks = split_ws(v);
  if (toks.size() != 3) throw ConfigError(key + ": expected three integers");
  return {to_int(toks[0], key), to_int(toks[1], key), to_int(toks[2], key)};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Single assignment handler shared by the parser and --set overrides.
void set_value(RunConfig& c, const std::string& section, const std::string& key,
               const std::string& value, ProbeSpec* probe) {
  const std::string addr = section.empty() ? key : section + "." + key;
  if (section.empty()) {
    if (key == "schema_version") {
      c.schema_version = to_int(value, addr);
      if (c.schema_version != 1) throw ConfigError("unsupported schema_version " + value);
      return;
    }
    throw ConfigError("unknown key '" + key + "' outside a section");
  }
  if (section == "solver") {
    if (key == "n") c.solver.n = to_int(value, addr);
    else if (key == "nu") c.solver.nu = to_double(value, addr);
    else if (key == "eta") c.solver.eta = to_double(value, addr);
    else if (key == "dt") c.solver.dt = to_double(value, addr);
    else if (key == "t_end") c.solver.t_end = to_double(value, addr);
    else if (key == "cfl_check") c.solver.cfl_check = to_bool(value, addr);
    else if (key == "init") {
      if (value == "zero") c.solver.init.kind = InitSpec::Kind::zero;
      else if (value == "orszag-tang") c.solver.init.kind = InitSpec::Kind::orszag_tang;
      else if (value == "random-band") c.solver.init.kind = InitSpec::Kind::random_band;
      else if (value.rfind("file:", 0) == 0) {
        c.solver.init.kind = InitSpec::Kind::file;
        c.solver.init.path = value.substr(5);
        if (c.solver.init.path.empty()) throw ConfigError(addr + ": empty file path");
      } else
        throw ConfigError(addr + ": unknown preset '" + value +
                          "' (zero | orszag-tang | random-band | file:PATH)");
    } else if (key == "init_seed")
      c.solver.init.seed = static_cast<std::uint64_t>(to_double(value, addr));
    else if (key == "init_energy") c.solver.init.energy = to_double(value, addr);
    else if (key == "init_slope") c.solver.init.slope = to_double(value, addr);
    else if (key == "init_band") {
      const auto toks = split_ws(value);
      if (toks.size() != 2) throw ConfigError(addr + ": expected 'lo hi'");
      c.solver.init.band_lo = to_int(toks[0], addr);
      c.solver.init.band_hi = to_int(toks[1], addr);
    } else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  if (section == "forcing") {
    if (key == "kind") {
      if (value == "zero") c.solver.forcing.kind = ForcingSpec::Kind::zero;
      else if (value == "fixed-low-mode")
        c.solver.forcing.kind = ForcingSpec::Kind::fixed_low_mode;
      else
        throw ConfigError(addr + ": unknown kind '" + value + "' (zero | fixed-low-mode)");
    } else if (key == "amplitude")
      c.solver.forcing.amplitude = to_double(value, addr);
    else if (key == "ramp_time") c.solver.forcing.ramp_time = to_double(value, addr);
    else if (key == "modes") {
      c.solver.forcing.mode_set.clear();
      std::stringstream ss(value);
      std::string part;
      while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (!part.empty()) c.solver.forcing.mode_set.push_back(to_ivec3(part, addr));
      }
      if (c.solver.forcing.mode_set.empty())
        throw ConfigError(addr + ": expected 'x y z ; x y z ...'");
    } else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  if (section == "probe") {
    if (probe == nullptr) throw ConfigError("probe keys cannot be set by override");
    if (key == "k") probe->k = to_ivec3(value, addr);
    else if (key == "delta") probe->delta = to_double(value, addr);
    else if (key == "p_grid") {
      probe->p_grid.clear();
      for (const std::string& tok : split_ws(value)) {
        if (tok == "inf")
          throw ConfigError(addr + ": p = infinity is always evaluated; list finite p only");
        probe->p_grid.push_back(to_double(tok, addr));
      }
      if (probe->p_grid.empty()) throw ConfigError(addr + ": empty p grid");
    } else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  if (section == "bounds") {
    if (key == "C0") c.bounds.C0 = to_double(value, addr);
    else if (key == "eps") {
      if (value == "measured") {
        c.bounds.eps_measured = true;
      } else {
        c.bounds.eps_measured = false;
        c.bounds.eps_value = to_double(value, addr);
      }
    } else if (key == "margin")
      c.bounds.margin = to_double(value, addr);
    else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  if (section == "verify") {
    if (key == "shell_lo") c.shell_lo = to_int(value, addr);
    else if (key == "shell_hi") c.shell_hi = to_int(value, addr);
    else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  if (section == "output") {
    if (key == "directory") c.output.directory = value;
    else if (key == "cadence") c.output.cadence = to_int(value, addr);
    else if (key == "formats") {
      c.output.csv = c.output.jsonl = false;
      for (const std::string& tok : split_ws(value)) {
        if (tok == "csv") c.output.csv = true;
        else if (tok == "jsonl") c.output.jsonl = true;
        else
          throw ConfigError(addr + ": unknown format '" + tok + "' (csv | jsonl)");
      }
    } else if (key == "checkpoints") {
      if (value == "none") c.output.checkpoints = OutputConfig::Checkpoints::none;
      else if (value == "endpoints")
        c.output.checkpoints = OutputConfig::Checkpoints::endpoints;
      else if (value == "all") c.output.checkpoints = OutputConfig::Checkpoints::all;
      else
        throw ConfigError(addr + ": expected none | endpoints | all");
    } else
      throw ConfigError("unknown key '" + addr + "'");
    return;
  }
  throw ConfigError("unknown section [" + section + "]");
}

void validate_probe(const ProbeSpec& probe, int n) {
  const double kn = probe.norm();
  if (kn < 2.0)
    throw ConfigError("probe |k| must be >= 2 (lattice shells below 2 are not probed)");
  if (probe.delta < 1.0)
    throw ConfigError("probe delta must be >= 1 lattice unit for a nonempty plateau");
  // Enforces 0 < delta < |k|/(2*sqrt(3)) with the named bound.
  const CutoffSpec cut = make_cutoff(
      {static_cast<double>(probe.k[0]), static_cast<double>(probe.k[1]),
       static_cast<double>(probe.k[2])},
      probe.delta);
  build_cutoff_table(cut, WavenumberGrid(n));  // rejects supports off the lattice
  for (double p : probe.p_grid)
    if (p < 2.0) throw ConfigError("probe p grid entries must be >= 2");
}

void post_validate(RunConfig& c) {
  c.solver.snapshot_cadence = c.output.cadence;
  c.solver.validate();
  if (c.output.cadence < 1) throw ConfigError("output.cadence must be >= 1");
  if (!(c.bounds.margin > 1.0)) throw ConfigError("bounds.margin must exceed 1");
  if (!c.bounds.eps_measured && !(c.bounds.eps_value > 0.0))
    throw ConfigError("bounds.eps must be 'measured' or a positive number");
  if (c.bounds.C0.has_value() && !(*c.bounds.C0 > 0.0))
    throw ConfigError("bounds.C0 must be positive");
  if (c.shell_lo < 2 || c.shell_hi < c.shell_lo)
    throw ConfigError("verify shells need 2 <= shell_lo <= shell_hi");
  for (const ProbeSpec& probe : c.probes) validate_probe(probe, c.solver.n);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::vector<std::string> errors;
  std::string section;
  int line_no = 0;
  int probe_line = 0;

  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(line_no) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section == "probe") {
        config.probes.emplace_back();
        probe_line = line_no;
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      ProbeSpec* probe =
          section == "probe" && !config.probes.empty() ? &config.probes.back() : nullptr;
      if (section == "probe" && probe == nullptr)
        throw ConfigError("probe keys before any [probe] section");
      set_value(config, section, key, value, probe);
    } catch (const ConfigError& e) {
      errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (errors.empty()) {
    try {
      post_validate(config);
    } catch (const ConfigError& e) {
      errors.push_back(std::string(e.what()) +
                       (probe_line > 0 && std::string(e.what()).find("probe") == 0
                            ? " (probe section at line " + std::to_string(probe_line) + ")"
                            : ""));
    }
  }
  if (!errors.empty()) {
    std::string joined = "configuration invalid:";
    for (const std::string& e : errors) joined += "\n  " + e;
    throw ConfigError(joined);
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "schema_version = " << c.schema_version << "\n\n";
  os << "[solver]\n";
  os << "n = " << c.solver.n << "\n";
  os << "nu = " << fmt(c.solver.nu) << "\n";
  os << "eta = " << fmt(c.solver.eta) << "\n";
  os << "dt = " << fmt(c.solver.dt) << "\n";
  os << "t_end = " << fmt(c.solver.t_end) << "\n";
  os << "cfl_check = " << (c.solver.cfl_check ? "true" : "false") << "\n";
  switch (c.solver.init.kind) {
    case InitSpec::Kind::zero: os << "init = zero\n"; break;
    case InitSpec::Kind::orszag_tang: os << "init = orszag-tang\n"; break;
    case InitSpec::Kind::random_band:
      os << "init = random-band\n";
      os << "init_seed = " << c.solver.init.seed << "\n";
      os << "init_energy = " << fmt(c.solver.init.energy) << "\n";
      os << "init_slope = " << fmt(c.solver.init.slope) << "\n";
      os << "init_band = " << c.solver.init.band_lo << " " << c.solver.init.band_hi << "\n";
      break;
    case InitSpec::Kind::file: os << "init = file:" << c.solver.init.path << "\n"; break;
  }
  os << "\n[forcing]\n";
  os << "kind = "
     << (c.solver.forcing.kind == ForcingSpec::Kind::zero ? "zero" : "fixed-low-mode") << "\n";
  if (c.solver.forcing.kind != ForcingSpec::Kind::zero) {
    os << "amplitude = " << fmt(c.solver.forcing.amplitude) << "\n";
    os << "ramp_time = " << fmt(c.solver.forcing.ramp_time) << "\n";
    os << "modes =";
    for (std::size_t i = 0; i < c.solver.forcing.mode_set.size(); ++i) {
      const auto& m = c.solver.forcing.mode_set[i];
      os << (i ? " ; " : " ") << m[0] << " " << m[1] << " " << m[2];
    }
    os << "\n";
  }
  for (const ProbeSpec& probe : c.probes) {
    os << "\n[probe]\n";
    os << "k = " << probe.k[0] << " " << probe.k[1] << " " << probe.k[2] << "\n";
    os << "delta = " << fmt(probe.delta) << "\n";
    os << "p_grid =";
    for (double p : probe.p_grid) os << " " << fmt(p);
    os << "\n";
  }
  os << "\n[bounds]\n";
  if (c.bounds.C0.has_value()) os << "C0 = " << fmt(*c.bounds.C0) << "\n";
  os << "eps = " << (c.bounds.eps_measured ? "measured" : fmt(c.bounds.eps_value)) << "\n";
  os << "margin = " << fmt(c.bounds.margin) << "\n";
  os << "\n[verify]\n";
  os << "shell_lo = " << c.shell_lo << "\n";
  os << "shell_hi = " << c.shell_hi << "\n";
  os << "\n[output]\n";
  os << "directory = " << c.output.directory << "\n";
  os << "cadence = " << c.output.cadence << "\n";
  os << "formats =" << (c.output.csv ? " csv" : "") << (c.output.jsonl ? " jsonl" : "") << "\n";
  switch (c.output.checkpoints) {
    case OutputConfig::Checkpoints::none: os << "checkpoints = none\n"; break;
    case OutputConfig::Checkpoints::endpoints: os << "checkpoints = endpoints\n"; break;
    case OutputConfig::Checkpoints::all: os << "checkpoints = all\n"; break;
  }
  return os.str();
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
  const std::string addr = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = addr.find('.');
  const std::string section = dot == std::string::npos ? "" : addr.substr(0, dot);
  const std::string key = dot == std::string::npos ? addr : addr.substr(dot + 1);
  set_value(config, section, key, value, nullptr);
  post_validate(config);
}

bool config_equal(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace mhds
