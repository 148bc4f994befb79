#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhds/field.hpp"
#include "mhds/ops.hpp"

namespace mhds {

// Divergence-free deterministic body force, equal on both fields, supported
// on a fixed set of low modes (|xi| <= 2) with an optional smooth time ramp.
struct ForcingSpec {
  enum class Kind { zero, fixed_low_mode };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  std::vector<std::array<int, 3>> mode_set;
  double ramp_time = 0.0;  // <= 0: constant envelope
};

double forcing_ramp(double t, double ramp_time);
void forcing_eval(const ForcingSpec& spec, const WavenumberGrid& grid, double t,
                  SpectralField& f1, SpectralField& f2);

struct InitSpec {
  enum class Kind { zero, orszag_tang, random_band, file };
  Kind kind = Kind::orszag_tang;
  std::uint64_t seed = 1;
  double energy = 1.0;  // random_band: total energy per field
  double slope = 2.0;   // random_band: shell spectrum ~ k^-slope
  int band_lo = 2;
  int band_hi = 4;
  std::string path;  // file: resolved by the CLI layer
};

struct SolverParams {
  int n = 16;
  double nu = 0.05;
  double eta = 0.05;
  double dt = 0.01;
  double t_end = 1.0;
  ForcingSpec forcing;
  InitSpec init;
  bool cfl_check = true;
  int snapshot_cadence = 10;  // record/observe every this many steps

  void validate() const;  // throws ConfigError
  double min_visc() const { return nu < eta ? nu : eta; }
};

struct MHDState {
  SpectralField u_hat;
  SpectralField b_hat;
  double t = 0.0;
};

// Ledger entry at one snapshot. kinetic/magnetic are the box integrals
// |u|^2, |b|^2 (no 1/2). dissipated accumulates
// min(nu,eta) * int_0^t (||grad u||^2 + ||grad b||^2), injected accumulates
// int_0^t int (u.f1 + b.f2); both integrated with the RK4 stage weights.
// residual is LHS - RHS of the weak-solution energy inequality:
//   residual = 1/2 energy(t) + dissipated - injected - 1/2 energy(0),
// <= 0 (up to time-discretization error) on every admissible run.
struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double magnetic = 0.0;
  double dissipated = 0.0;
  double injected = 0.0;
  double residual = 0.0;
};

struct RhsResult {
  SpectralField du;
  SpectralField db;
  double max_speed = 0.0;  // max over collocation points of |u| + |b|
};

// Fourier-space right-hand side:
//   du = -nu |xi|^2 u + P[(b.grad)b] - P[(u.grad)u] + f1
//   db = -eta|xi|^2 b + P[(b.grad)u] - P[(u.grad)b] + f2
// with P the Leray projector and products formed pseudo-spectrally.
RhsResult rhs(const MHDState& state, const SolverParams& params);

MHDState initial_state(const SolverParams& params);

// One integrating-factor RK4 step; diffusion handled exactly by the factor,
// output re-projected and dealiased.
MHDState step(const MHDState& state, const SolverParams& params);

struct Trajectory {
  std::vector<MHDState> snapshots;
  std::vector<EnergyRecord> records;
};

// Owns the marching state and the ledger accumulators of one run.
class Integrator {
 public:
  explicit Integrator(const SolverParams& params);
  Integrator(const SolverParams& params, MHDState initial);

  const MHDState& state() const { return state_; }
  void advance();  // one step of params.dt
  EnergyRecord record() const;
  double initial_energy() const { return energy0_; }

 private:
  void init_tables();
  SolverParams params_;
  MHDState state_;
  std::vector<double> half_u_, full_u_, half_b_, full_b_;  // e^{-visc |xi|^2 dt/2}, dt
  double diss_integral_ = 0.0;  // min(nu,eta) weighted
  double inj_integral_ = 0.0;
  double energy0_ = 0.0;
};

using RunObserver = std::function<void(const MHDState&, const EnergyRecord&)>;

// Deterministic given params (and seed). The observer sees the initial
// snapshot, every cadence-th step and the final step.
void run(const SolverParams& params, const RunObserver& observer,
         std::optional<MHDState> initial = std::nullopt);
Trajectory run(const SolverParams& params, std::optional<MHDState> initial = std::nullopt);

// Number of uniform dt steps a run performs.
long run_step_count(const SolverParams& params);

// Recompute the residual series from the recorded energies; entry [0] is the
// reference point.
std::vector<EnergyRecord> energy_ledger(const Trajectory& traj);

}  // namespace mhds
