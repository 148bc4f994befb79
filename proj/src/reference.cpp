#include "mhds/reference.hpp"

#include <cmath>
#include <vector>

namespace mhds::ref {

namespace {

const double kTwoPi = WavenumberGrid::two_pi();

// Naive 1D DFT along one axis of an n^3 complex cube, sign = -1 forward.
void dft_axis(std::vector<Complex>& data, int n, int axis, int sign) {
  std::vector<Complex> line(static_cast<std::size_t>(n));
  std::vector<Complex> out(static_cast<std::size_t>(n));
  const std::size_t n3 = static_cast<std::size_t>(n) * n * n;
  std::size_t stride = 1;
  if (axis == 0) stride = static_cast<std::size_t>(n) * n;
  if (axis == 1) stride = static_cast<std::size_t>(n);

  for (std::size_t base = 0; base < n3; ++base) {
    // Visit each 1D line exactly once: base must be the line's first element.
    const std::size_t along = (base / stride) % static_cast<std::size_t>(n);
    if (along != 0) continue;
    for (int j = 0; j < n; ++j) line[static_cast<std::size_t>(j)] = data[base + j * stride];
    for (int k = 0; k < n; ++k) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        const double ang = sign * kTwoPi * j * k / n;
        acc += line[static_cast<std::size_t>(j)] * Complex(std::cos(ang), std::sin(ang));
      }
      out[static_cast<std::size_t>(k)] = acc;
    }
    for (int k = 0; k < n; ++k) data[base + k * stride] = out[static_cast<std::size_t>(k)];
  }
}

}  // namespace

double parseval_energy(const SpectralField& F) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (const Complex& z : F.c[static_cast<std::size_t>(i)]) sum += std::norm(z);
  return sum * F.grid.cell_measure();
}

double physical_energy(const PhysicalField& f) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (double x : f.v[static_cast<std::size_t>(i)]) sum += x * x;
  return sum * f.grid.physical_cell();
}

SpectralField leray_project(const SpectralField& F) {
  SpectralField out(F.grid);
  for (std::size_t m = 0; m < F.grid.size(); ++m) {
    const auto f = F.grid.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] +
                      static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    if (k2 == 0.0) {
      for (int i = 0; i < 3; ++i) out.c[i][m] = F.c[i][m];
      continue;
    }
    Complex zdotk(0.0, 0.0);
    for (int i = 0; i < 3; ++i) zdotk += F.c[i][m] * static_cast<double>(f[i]);
    for (int i = 0; i < 3; ++i)
      out.c[i][m] = F.c[i][m] - zdotk * static_cast<double>(f[i]) / k2;
  }
  out.solenoidal = true;
  return out;
}

double divergence_max(const SpectralField& F) {
  double worst = 0.0;
  for (std::size_t m = 0; m < F.grid.size(); ++m) {
    const auto f = F.grid.freqs_of(m);
    Complex d(0.0, 0.0);
    for (int i = 0; i < 3; ++i) d += F.c[i][m] * static_cast<double>(f[i]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  const int bound = F.grid.dealias_bound();
  const int nyq = F.grid.nyquist();
  for (std::size_t m = 0; m < F.grid.size(); ++m) {
    const auto f = F.grid.freqs_of(m);
    if (std::abs(f[0]) > bound || std::abs(f[1]) > bound || std::abs(f[2]) > bound ||
        f[0] == nyq || f[1] == nyq || f[2] == nyq)
      for (int i = 0; i < 3; ++i) out.c[i][m] = Complex(0.0, 0.0);
  }
  return out;
}

double grad_norm_sq(const SpectralField& F) {
  double sum = 0.0;
  for (std::size_t m = 0; m < F.grid.size(); ++m) {
    const auto f = F.grid.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] +
                      static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    for (int i = 0; i < 3; ++i) sum += k2 * std::norm(F.c[i][m]);
  }
  return sum;
}

double cross_helicity(const SpectralField& u, const SpectralField& b) {
  double sum = 0.0;
  for (std::size_t m = 0; m < u.grid.size(); ++m)
    for (int i = 0; i < 3; ++i) sum += (u.c[i][m] * std::conj(b.c[i][m])).real();
  return sum;
}

SpectralField dft_forward(const PhysicalField& f) {
  const int n = f.grid.n();
  SpectralField out(f.grid);
  for (int i = 0; i < 3; ++i) {
    std::vector<Complex>& comp = out.c[static_cast<std::size_t>(i)];
    for (std::size_t m = 0; m < f.grid.size(); ++m)
      comp[m] = Complex(f.v[static_cast<std::size_t>(i)][m], 0.0);
    for (int axis = 0; axis < 3; ++axis) dft_axis(comp, n, axis, -1);
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (Complex& z : comp) z *= scale;
  }
  return out;
}

PhysicalField dft_inverse(const SpectralField& F) {
  const int n = F.grid.n();
  PhysicalField out(F.grid);
  for (int i = 0; i < 3; ++i) {
    std::vector<Complex> comp = F.c[static_cast<std::size_t>(i)];
    for (int axis = 0; axis < 3; ++axis) dft_axis(comp, n, axis, +1);
    for (std::size_t m = 0; m < F.grid.size(); ++m)
      out.v[static_cast<std::size_t>(i)][m] = comp[m].real();
  }
  return out;
}

SpectralField advective_convolution_direct(const SpectralField& a, const SpectralField& b) {
  const WavenumberGrid& g = a.grid;
  const int n = g.n();
  const int lo = -n / 2 + 1, hi = n / 2;
  SpectralField out(g);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const auto xi = g.freqs_of(m);
    Complex acc[3] = {Complex(0, 0), Complex(0, 0), Complex(0, 0)};
    for (std::size_t mz = 0; mz < g.size(); ++mz) {
      const auto zeta = g.freqs_of(mz);
      const int dx = xi[0] - zeta[0], dy = xi[1] - zeta[1], dz = xi[2] - zeta[2];
      if (dx < lo || dx > hi || dy < lo || dy > hi || dz < lo || dz > hi) continue;
      const std::size_t md = g.flat_freq(dx, dy, dz);
      const Complex adotz = a.c[0][md] * static_cast<double>(zeta[0]) +
                            a.c[1][md] * static_cast<double>(zeta[1]) +
                            a.c[2][md] * static_cast<double>(zeta[2]);
      const Complex factor = Complex(0.0, 1.0) * adotz;
      for (int i = 0; i < 3; ++i) acc[i] += factor * b.c[i][mz];
    }
    for (int i = 0; i < 3; ++i) out.c[i][m] = acc[i];
  }
  return out;
}

}  // namespace mhds::ref
