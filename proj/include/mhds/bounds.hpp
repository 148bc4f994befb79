#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mhds/errors.hpp"

namespace mhds {

// Inputs of the closed-form bound family. The spectral constant C0 has no
// default: it must be supplied by configuration.
struct BoundInputs {
  double nu = 0.0;
  double eta = 0.0;
  double C0 = 0.0;
  double eps = 0.0;  // dissipation rate (measured or supplied)
  double T = 0.0;
  double R_sq = 0.0;    // energy bound R^2(T)
  double R1 = 0.0;      // at T (constant for unforced runs)
  double R1_at_0 = 0.0;
  double R2 = 0.0;
  double R3 = 0.0;
  double F_inf = 0.0;
  double min_visc() const { return nu < eta ? nu : eta; }
};

// R^2(t) = ||u0||^2 + ||b0||^2 + 2 max(0, int_0^t int u.f1 + b.f2).
// Constant and equal to the initial energy on unforced runs.
double energy_bound_R_sq(double initial_energy, double injected_work);

// R1(t) = margin * (6 / min(nu,eta)) * max_{p in grid + inf}
//           [ 2^{1/p} (2 delta)^{3/p} R^2(t) + 2 h_p(k,t) ],
// monotonized to be nondecreasing. margin must exceed 1 so the selection
// hypothesis holds strictly at every sample.
// hp_series[j] aligns with R_sq_series and holds one value per p in p_grid
// (p = infinity is appended internally with coefficient 1).
std::vector<double> select_R1(std::span<const double> R_sq_series,
                              std::span<const std::vector<double>> hp_series,
                              double delta, std::span<const double> p_grid,
                              double nu, double eta, double margin,
                              std::span<const double> hinf_series = {});

// F_inf(T): max over probes of the time quadrature (trapezoid) of
// sup-norm-squared forcing samples.
double compute_F_inf(std::span<const double> times,
                     std::span<const std::vector<double>> sup_sq_per_probe);

// R3(T) = 2 R^2(T)/min(nu,eta) + 2 F_inf(T)/sqrt(min(nu,eta)).
double compute_R3(double R_sq_T, double F_inf, double nu, double eta);

// Proof-route variant R_{3,p} = 4 [ (2 delta)^{3/p} R^2(T) + F_p(T) ],
// exposed for comparison; the statement-route compute_R3 is the default.
double compute_R3_proof_variant(double R_sq_T, double F_p, double delta, double p);

// R2(T) = (R3 + sqrt(4 R1(0)^2 + R3^2)) / 2, the positive root of
// x^2 - R3 x - R1(0)^2.
double compute_R2(double R1_at_0, double R3);

struct InertialRange {
  double k1 = 0.0;
  double k2 = 0.0;
};

// k1 = C0^{3/5} eps^{2/5} / (4 pi R1^2)^{3/5}
// k2 = (4 pi / (C0 min(nu,eta)))^3 R2^6 / (eps^2 T^3)
InertialRange inertial_bounds(double C0, double eps, double nu, double eta, double R1,
                              double R2, double T);

struct ConditionResult {
  bool satisfied = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

// Necessary condition for a nonempty inertial range:
//   min(nu,eta)^{5/6} C0 eps^{2/3} <= 4 pi (R2/sqrt(T))^{5/3} R1^{1/3}.
// Equivalent to k1 <= k2.
ConditionResult k41_condition(double C0, double eps, double nu, double eta, double R1,
                              double R2, double T);

// T0 = (4 pi)^{6/5} R2^2 R1^{2/5} / (eps^{4/5} C0^{6/5} min(nu,eta)),
// the horizon at which k1 = k2.
double max_time_T0(double C0, double eps, double nu, double eta, double R1, double R2);

// eps_min = (4 pi)^{3/2} R1^{1/2} R2^{5/2} /
//           (T0^{5/4} min(nu,eta)^{5/4} C0^{3/2});
// inverse of max_time_T0 in eps.
double min_dissipation(double T0, double nu, double eta, double C0, double R1, double R2);

// Kolmogorov curve E_K(k) = C0 eps^{2/3} k^{-5/3}.
double kolmogorov_curve(double C0, double eps, double k);

struct RegionSQuery {
  bool member = false;
  double cap_energy = 0.0;   // 4 pi R1^2
  double cap_average = 0.0;  // 4 pi R2^2 / (min(nu,eta) T k^2)
};

// Membership of (k, E) in the admissible region cut out by the energy cap
// and the time-average cap.
RegionSQuery region_S(double k, double E_value, double R1, double R2, double nu,
                      double eta, double T);

// Sampled region boundary for plotting: rows (k, cap_energy, cap_average).
std::vector<std::array<double, 3>> region_S_boundary(double R1, double R2, double nu,
                                                     double eta, double T, double k_lo,
                                                     double k_hi, int samples);

}  // namespace mhds
