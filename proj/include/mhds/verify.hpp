#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhds/bounds.hpp"
#include "mhds/diagnostics.hpp"
#include "mhds/solver.hpp"

namespace mhds {

// One localized probe: center, cutoff width and the finite p grid
// (p = infinity is always evaluated in addition).
struct ProbeSpec {
  std::array<int, 3> k{0, 0, 0};
  double delta = 1.0;
  std::vector<double> p_grid{2.0, 3.0, 4.0, 8.0, 16.0, 32.0};

  double norm() const;
  std::string label() const;
};

struct CheckSample {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

enum class Verdict { pass, fail, hypothesis_unmet };
const char* to_string(Verdict v);

struct CheckReport {
  std::string name;
  std::string probe;  // empty when not probe-specific
  std::vector<CheckSample> samples;
  Verdict verdict = Verdict::fail;
  double worst_margin = 0.0;
  double tolerance = 0.0;  // pass iff margin >= -tolerance * scale per sample
  std::string note;
};

// Everything the checks consume, gathered in one streaming pass over a run.
// The checks recompute both sides of every inequality from these series;
// nothing is reused from the solver's internals except the recorded ledger.
struct ProbeSeries {
  ProbeSpec spec;
  std::vector<std::vector<double>> e_rows;  // [sample][p_grid.. , infinity]
  std::vector<std::vector<double>> h_rows;  // running sup, same layout
  std::vector<double> sup_sq;               // forcing sup-norm^2 samples
};

struct RunCheckData {
  SolverParams params;
  std::vector<double> times;
  std::vector<EnergyRecord> records;
  std::vector<ShellSpectrum> spectra;
  std::vector<double> cross_helicity_series;
  std::vector<double> dissipation_series;
  std::vector<ProbeSeries> probes;        // user probes
  std::vector<ProbeSeries> extra_probes;  // forcing-centered, F_inf only
  double eps_mean = 0.0;                  // time-mean dissipation rate
  double initial_energy = 0.0;

  std::vector<double> R_sq_series() const;  // R^2(t_j) from the ledger
  double total_time() const { return times.empty() ? 0.0 : times.back(); }
};

// `extra` (when set) sees every observed snapshot, e.g. to write checkpoints.
RunCheckData collect_run_data(const SolverParams& params, std::span<const ProbeSpec> probes,
                              std::optional<MHDState> initial = std::nullopt,
                              const RunObserver& extra = {});

// e_2(k,t) <= R1(t)/|k| under the selection hypothesis
//   (2 delta)^{3/2} sqrt(2) R^2(t) + 2 h_2(k,t) < min(nu,eta)/6 R1(t)
// and the initial condition e_2(k,0) < R1(0)/|k|.
CheckReport check_e2_containment(const RunCheckData& data, const ProbeSeries& probe,
                                 std::span<const double> R1_series);

// sup_p e_p(k,t) <= R1(t)/|k| with the per-p hypothesis family.
CheckReport check_sup_ep_containment(const RunCheckData& data, const ProbeSeries& probe,
                                     std::span<const double> R1_series);

// int_0^T sup_p e_p dt <= R2^2(T) / (min(nu,eta) |k|^4).
CheckReport check_ep_time_integral(const RunCheckData& data, const ProbeSeries& probe,
                                   std::span<const double> R1_series, double R2_T);

// Per-shell spectral caps; R1/R2 supplied per shell (index 0 = shell_lo).
CheckReport check_shell_energy_cap(const RunCheckData& data, int shell_lo, int shell_hi,
                                   std::span<const std::vector<double>> R1_per_shell);
CheckReport check_shell_average_cap(const RunCheckData& data, int shell_lo, int shell_hi,
                                    std::span<const double> R2_per_shell);

// Ideal quadratic invariants: energy and cross helicity drift below 1e-6
// relative on a nu = eta = 0, f = 0 run.
CheckReport check_ideal_invariants(const RunCheckData& data);

struct VerifySetup {
  SolverParams params;
  std::vector<ProbeSpec> probes;
  double margin = 1.1;  // R1 selection margin
  int shell_lo = 2;
  int shell_hi = 10;
};

struct VerifyOutcome {
  std::vector<CheckReport> reports;
  bool any_failure = false;  // over verified-hypothesis checks only
  double eps_mean = 0.0;
  double R_sq_T = 0.0;
  double F_inf = 0.0;
};

// Runs the simulation once and evaluates every applicable check.
VerifyOutcome run_all_checks(const VerifySetup& setup,
                             std::optional<MHDState> initial = std::nullopt);

// Margin-rule R1 series for one collected probe.
std::vector<double> select_R1_for_probe(const RunCheckData& data, const ProbeSeries& probe,
                                        double margin);

// F_inf over every probe collected with the run (user, shell, forcing).
double probe_F_inf(const RunCheckData& data);

}  // namespace mhds
