#pragma once

#include <random>

#include "mhds/fft.hpp"
#include "mhds/ops.hpp"

namespace mhds::test {

inline PhysicalField random_physical(const WavenumberGrid& g, std::uint64_t seed) {
  PhysicalField f(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (double& x : f.v[static_cast<std::size_t>(i)]) x = uni(rng);
  return f;
}

// Hermitian spectral field with zero mean and clean Nyquist planes.
inline SpectralField random_spectral(const WavenumberGrid& g, std::uint64_t seed,
                                     bool dealiased = false) {
  SpectralField F(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (Complex& z : F.c[static_cast<std::size_t>(i)]) z = Complex(normal(rng), normal(rng));
  hermitian_symmetrize(F);
  zero_mean_and_nyquist(F);
  if (dealiased) F = dealias(F);
  return F;
}

inline SpectralField random_solenoidal(const WavenumberGrid& g, std::uint64_t seed,
                                       bool dealiased = true) {
  return leray_project(random_spectral(g, seed, dealiased));
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < a.grid.size(); ++m)
      worst = std::max(worst, std::abs(a.c[static_cast<std::size_t>(i)][m] -
                                       b.c[static_cast<std::size_t>(i)][m]));
  return worst;
}

inline double max_value_diff(const PhysicalField& a, const PhysicalField& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < a.grid.size(); ++m)
      worst = std::max(worst, std::abs(a.v[static_cast<std::size_t>(i)][m] -
                                       b.v[static_cast<std::size_t>(i)][m]));
  return worst;
}

inline double max_coeff_abs(const SpectralField& a) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (const Complex& z : a.c[static_cast<std::size_t>(i)])
      worst = std::max(worst, std::abs(z));
  return worst;
}

}  // namespace mhds::test
