#pragma once

#include "mhds/field.hpp"

namespace mhds {

// Discrete transforms between collocation values and lattice coefficients:
//
//   forward:  F(xi) = 1/n^3 * sum_x f(x) exp(-i xi.x)
//   inverse:  f(x)  =         sum_xi F(xi) exp(+i xi.x)
//
// Exact inverses of each other to rounding. The box measure is normalized
// to unit volume, so sum_xi |F|^2 equals the box integral of |f|^2 with no
// stray constants, and the forward transform of a pointwise product equals
// the plain lattice convolution sum of the factors' coefficients.
SpectralField fft_forward(const PhysicalField& f);
PhysicalField fft_inverse(const SpectralField& F);

}  // namespace mhds
