#pragma once

#include "mhds/field.hpp"

namespace mhds {

// sum_xi |F(xi)|^2 * cell_measure. Equals physical_energy(fft_inverse(F))
// for admissible (Hermitian) fields.
double parseval_energy(const SpectralField& F);

// Box integral of |f|^2 over the periodic domain (midpoint quadrature,
// exact for band-limited fields).
double physical_energy(const PhysicalField& f);

// Per-mode projection onto divergence-free fields:
//   out(xi) = F(xi) - (F(xi).xi) xi / |xi|^2,  xi != 0.
// Requires a zero mean mode. Linear, idempotent, norm-nonincreasing.
SpectralField leray_project(const SpectralField& F);

// max over xi of |xi . F(xi)|, the worst spectral divergence.
double divergence_max(const SpectralField& F);

// 2/3 rule: zero every mode with any |xi_i| > n/3; Nyquist planes are
// zeroed as well. Energy never increases.
SpectralField dealias(const SpectralField& F);

// Coefficients of the advective derivative (a . grad) b on the lattice
// convolution convention:
//   out(xi) = sum_zeta i (a(xi - zeta) . zeta) b(zeta),
// evaluated pseudo-spectrally (inverse-transform a and grad b, multiply
// pointwise, forward-transform, rescale, dealias). Matches the direct
// double sum exactly when both inputs are dealiased.
SpectralField advective_convolution(const SpectralField& a, const SpectralField& b);

// sum_xi Re( u(xi) . conj(b(xi)) ), the spectral form of the box integral
// of u.b. A quadratic invariant of the ideal system.
double cross_helicity(const SpectralField& u, const SpectralField& b);

// sum_xi |xi|^2 |F(xi)|^2, the spectral form of the gradient norm.
double grad_norm_sq(const SpectralField& F);

// Worst re-symmetrization residual max |F(-xi) - conj(F(xi))| over
// conjugate pairs (Nyquist planes excluded).
double hermitian_residual(const SpectralField& F);

// Largest |xi . F(xi)| normalized check used by the solenoidal invariant.
bool is_solenoidal(const SpectralField& F, double tol = 1e-12);

// Zero the mean mode and the Nyquist planes in place.
void zero_mean_and_nyquist(SpectralField& F);

// Fused single-pass form of leray_project + dealias + zero_mean_and_nyquist
// used on the solver's hot path; same result as the composition.
void project_dealias_zero(SpectralField& F);

// Restore exact Hermitian symmetry in place by averaging conjugate pairs.
void hermitian_symmetrize(SpectralField& F);

bool all_finite(const SpectralField& F);

}  // namespace mhds
