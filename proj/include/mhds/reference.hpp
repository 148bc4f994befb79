#pragma once

#include "mhds/field.hpp"

// Serial reference implementations. Straightforward loops, no OpenMP, no
// FFT: kept as independent comparators for the fast paths and as the
// brute-force oracles the tests freeze expected values from.
namespace mhds::ref {

double parseval_energy(const SpectralField& F);
double physical_energy(const PhysicalField& f);
SpectralField leray_project(const SpectralField& F);
double divergence_max(const SpectralField& F);
SpectralField dealias(const SpectralField& F);
double grad_norm_sq(const SpectralField& F);
double cross_helicity(const SpectralField& u, const SpectralField& b);

// Plain O(n^4) discrete Fourier sum per axis triple; same normalization as
// the fast transform.
SpectralField dft_forward(const PhysicalField& f);
PhysicalField dft_inverse(const SpectralField& F);

// Direct O(n^6) lattice convolution
//   out(xi) = sum_zeta i (a(xi - zeta) . zeta) b(zeta)
// over all pairs with both xi - zeta and zeta on the retained lattice.
// No dealiasing is applied to the result.
SpectralField advective_convolution_direct(const SpectralField& a, const SpectralField& b);

}  // namespace mhds::ref
