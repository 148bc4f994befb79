#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mhds/grid.hpp"

namespace mhds {

using Complex = std::complex<double>;

// Complex Fourier coefficients of a 3-component vector field, component-major.
// Hermitian symmetry (real physical field), a zero mean mode and zero Nyquist
// planes are maintained by the producing routines, not by this container.
struct SpectralField {
  WavenumberGrid grid;
  std::array<std::vector<Complex>, 3> c;
  bool solenoidal = false;

  SpectralField() = default;
  explicit SpectralField(const WavenumberGrid& g) : grid(g) {
    for (auto& comp : c) comp.assign(g.size(), Complex(0.0, 0.0));
  }

  static SpectralField zero(const WavenumberGrid& g) { return SpectralField(g); }

  Complex& at(int comp, int fx, int fy, int fz) {
    return c[comp][grid.flat_freq(fx, fy, fz)];
  }
  const Complex& at(int comp, int fx, int fy, int fz) const {
    return c[comp][grid.flat_freq(fx, fy, fz)];
  }
};

// Real collocation values of a 3-component vector field on the n^3 lattice
// x_m = 2*pi*m/n.
struct PhysicalField {
  WavenumberGrid grid;
  std::array<std::vector<double>, 3> v;

  PhysicalField() = default;
  explicit PhysicalField(const WavenumberGrid& g) : grid(g) {
    for (auto& comp : v) comp.assign(g.size(), 0.0);
  }

  static PhysicalField zero(const WavenumberGrid& g) { return PhysicalField(g); }
};

}  // namespace mhds
