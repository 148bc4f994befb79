#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "mhds/solver.hpp"

namespace mhds {

inline double p_infinity() { return std::numeric_limits<double>::infinity(); }

// Smooth cube cutoff about a probe wavevector k: product of one ramp per
// axis, identically 1 on the cube of side delta about k, identically 0
// outside the cube of side 2*delta. delta < |k| / (2*sqrt(3)) keeps the
// support inside the annulus |k|/2 <= |xi| <= 3|k|/2.
struct CutoffSpec {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double delta = 0.0;

  double center_norm() const;
  double value(double xi_x, double xi_y, double xi_z) const;
};

// Validates k != 0 and 0 < delta < |k|/(2*sqrt(3)).
CutoffSpec make_cutoff(const std::array<double, 3>& k, double delta);

// Axis ramp: 1 on [0, delta/2], 0 on [delta, inf), quintic smoothstep
// composed with the exp(-1/t) mollifier transition in between.
double cutoff_ramp(double r, double delta);

// Sparse evaluation table of a cutoff on a grid: (mode index, chi) pairs
// over the support lattice points.
struct CutoffTable {
  std::vector<std::pair<std::size_t, double>> entries;
};
CutoffTable build_cutoff_table(const CutoffSpec& cut, const WavenumberGrid& grid);

// e_p(k,t): lattice L^p norm of the cutoff-localized pair (u, b);
// p = infinity returns the max over modes of max(|chi u|, |chi b|).
// p < 2 is rejected.
double e_p(const MHDState& state, const CutoffSpec& cut, double p);
double e_p(const MHDState& state, const WavenumberGrid& grid, const CutoffTable& table,
           double p);

// One time sample of the h_p integrand over the forcing pair:
//   ( sum (|chi f1|^p + |chi f2|^p) / |xi|^p )^{1/p}.
// The running supremum over samples is kept by the caller.
double h_p_sample(const SpectralField& f1, const SpectralField& f2,
                  const WavenumberGrid& grid, const CutoffTable& table, double p);

// sup-norm sample used by the F_infinity quadrature:
//   max(chi |f1|)^2 + max(chi |f2|)^2.
double forcing_sup_sq(const SpectralField& f1, const SpectralField& f2,
                      const CutoffTable& table);

// Shell-averaged spectral energy: for integer k,
//   E(k,t) = (4 pi k^2 / M_k) * sum_{|xi| in [k-1/2, k+1/2)} (|u|^2 + |b|^2),
// shells 1 .. n/3. Empty shells report E = 0, count 0.
struct ShellSpectrum {
  struct Shell {
    int k = 0;
    double energy = 0.0;
    std::size_t count = 0;
  };
  std::vector<Shell> shells;
  double t = 0.0;
};
ShellSpectrum shell_spectrum(const MHDState& state);

// Instantaneous dissipation nu ||grad u||^2 + eta ||grad b||^2.
double dissipation_rate(const MHDState& state, double nu, double eta);
double dissipation_rate(const MHDState& state, const SolverParams& params);

// Least-squares line through (log k, log E) over shells [k_lo, k_hi];
// needs at least 3 nonempty shells with positive energy.
struct SlopeFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // rms log-residual
};
SlopeFit slope_fit(const ShellSpectrum& spectrum, int k_lo, int k_hi);

}  // namespace mhds
