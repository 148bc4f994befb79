#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhds/solver.hpp"
#include "mhds/verify.hpp"

namespace mhds {

struct BoundsConfig {
  std::optional<double> C0;  // no default: bounds outputs need an explicit value
  bool eps_measured = true;  // otherwise eps_value is used
  double eps_value = 0.0;
  double margin = 1.1;  // R1 selection margin
};

struct OutputConfig {
  enum class Checkpoints { none, endpoints, all };
  std::string directory = "out";
  int cadence = 10;
  bool csv = true;
  bool jsonl = true;
  Checkpoints checkpoints = Checkpoints::endpoints;
};

struct RunConfig {
  int schema_version = 1;
  SolverParams solver;
  std::vector<ProbeSpec> probes;
  BoundsConfig bounds;
  int shell_lo = 2;
  int shell_hi = 10;
  OutputConfig output;
};

// Flat key = value text with [section] headers, '#' comments and a
// repeatable [probe] section. Every constraint is checked at parse time;
// violations are reported together, each with its line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical emission; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& config);

// Apply a "section.key=value" override (probe sections are not addressable).
void apply_override(RunConfig& config, const std::string& assignment);

bool config_equal(const RunConfig& a, const RunConfig& b);

}  // namespace mhds
