#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "mhds/errors.hpp"

namespace mhds {

// Integer wavenumber lattice for a 2*pi-periodic box with n collocation
// points per axis. Retained frequencies per axis are {-n/2+1, ..., n/2};
// the Nyquist plane (n/2) has no conjugate partner and is kept zero by
// every field-producing routine.
class WavenumberGrid {
 public:
  WavenumberGrid() = default;

  explicit WavenumberGrid(int n) : n_(n) {
    if (n < 4 || n % 2 != 0)
      throw ConfigError("grid size must be even and >= 4, got n = " + std::to_string(n));
  }

  int n() const { return n_; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }

  // Storage index (0..n-1) -> signed frequency.
  int freq(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
  // Signed frequency -> storage index.
  int storage(int f) const { return f >= 0 ? f : f + n_; }

  int nyquist() const { return n_ / 2; }
  // 2/3-rule cutoff: modes with any |freq| > n/3 are discarded by dealias().
  int dealias_bound() const { return n_ / 3; }

  // Fourier-side cell volume; unity on the unit-spacing integer lattice.
  double cell_measure() const { return 1.0; }
  // Physical-side quadrature weight: the box measure is normalized to unit
  // volume so the lattice Parseval identity carries no stray constants.
  double physical_cell() const {
    return 1.0 / (static_cast<double>(n_) * n_ * n_);
  }

  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  std::size_t flat_freq(int fx, int fy, int fz) const {
    return flat(storage(fx), storage(fy), storage(fz));
  }

  // Decode a flat index into the three signed frequencies.
  std::array<int, 3> freqs_of(std::size_t m) const {
    const int k = static_cast<int>(m % n_);
    const int j = static_cast<int>((m / n_) % n_);
    const int i = static_cast<int>(m / (static_cast<std::size_t>(n_) * n_));
    return {freq(i), freq(j), freq(k)};
  }

  bool on_nyquist(const std::array<int, 3>& f) const {
    return f[0] == nyquist() || f[1] == nyquist() || f[2] == nyquist();
  }

  bool operator==(const WavenumberGrid& other) const { return n_ == other.n_; }
  bool operator!=(const WavenumberGrid& other) const { return n_ != other.n_; }

  static double two_pi() { return 6.283185307179586476925286766559; }

 private:
  int n_ = 0;
};

}  // namespace mhds
