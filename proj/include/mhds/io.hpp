#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mhds/bounds.hpp"
#include "mhds/config.hpp"
#include "mhds/verify.hpp"

namespace mhds {

// Checkpoint layout (little endian): magic "MHDS1", int64 n, f64 t, nu,
// eta, then the u-hat block followed by the b-hat block. Each block walks
// modes lexicographically (xi1 = -n/2+1..n/2 outermost, then xi2, xi3) and
// writes the three components as interleaved (re, im) doubles.
void checkpoint_write(const std::string& path, const MHDState& state, double nu, double eta);

struct Checkpoint {
  MHDState state;
  double nu = 0.0;
  double eta = 0.0;
};
Checkpoint checkpoint_read(const std::string& path);

// Evaluated bound family plus the echoed inputs.
struct BoundsReportData {
  double k1 = 0.0;
  double k2 = 0.0;
  bool condition53 = false;
  double margin53 = 0.0;
  double T0 = 0.0;
  double eps_min = 0.0;
  BoundInputs inputs;
  std::string eps_source;  // "measured" | "configured"
};

// Pure closed-form evaluation. If inputs.R2 <= 0 it is derived via
// R3(R_sq, F_inf) and R2(R1_at_0, R3); otherwise R2 is used as given.
BoundsReportData cmd_bounds(BoundInputs inputs, const std::string& eps_source);

std::string bounds_report_json(const BoundsReportData& report);
std::string checks_json(const std::vector<CheckReport>& reports);

struct RunArtifacts {
  std::filesystem::path directory;
  std::vector<std::string> files;  // names written, relative to directory
};

// Runs the configured simulation and writes manifest, ledger, diagnostics,
// spectra, checkpoints and (when C0 is configured) the bounds report.
// Nothing is written outside config.output.directory.
RunArtifacts cmd_run(const RunConfig& config);

struct VerifyArtifacts {
  VerifyOutcome outcome;
  std::filesystem::path checks_path;
};

// Re-derives every check from the run directory's manifest (runs are
// deterministic, so the trajectory is reconstructed exactly) and writes
// checks.json into the run directory (or to json_out when given).
VerifyArtifacts cmd_verify(const std::string& run_dir, const std::string& json_out = "");

// Shell-spectrum series of a finished run as CSV text.
std::string cmd_spectrum(const std::string& run_dir);

}  // namespace mhds
