#include "mhds/ops.hpp"

#include <cmath>

#include "mhds/fft.hpp"
#include "mhds/kernels.hpp"

namespace mhds {

namespace {

inline double norm3(const Complex& a, const Complex& b, const Complex& c) {
  return std::norm(a) + std::norm(b) + std::norm(c);
}

}  // namespace

double parseval_energy(const SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  const Complex* cx = F.c[0].data();
  const Complex* cy = F.c[1].data();
  const Complex* cz = F.c[2].data();
  const double sum = det_sum(n3, [&](std::size_t m) { return norm3(cx[m], cy[m], cz[m]); });
  return sum * F.grid.cell_measure();
}

double physical_energy(const PhysicalField& f) {
  const std::size_t n3 = f.grid.size();
  const double* vx = f.v[0].data();
  const double* vy = f.v[1].data();
  const double* vz = f.v[2].data();
  const double sum = det_sum(n3, [&](std::size_t m) {
    return vx[m] * vx[m] + vy[m] * vy[m] + vz[m] * vz[m];
  });
  return sum * f.grid.physical_cell();
}

SpectralField leray_project(const SpectralField& F) {
  SpectralField out(F.grid);
  const std::size_t n3 = F.grid.size();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = F.grid.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] +
                      static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    const Complex zx = F.c[0][m], zy = F.c[1][m], zz = F.c[2][m];
    if (k2 == 0.0) {
      // Mean mode carries no divergence; passed through unchanged.
      out.c[0][m] = zx;
      out.c[1][m] = zy;
      out.c[2][m] = zz;
      continue;
    }
    const Complex zdotk = zx * static_cast<double>(f[0]) +
                          zy * static_cast<double>(f[1]) +
                          zz * static_cast<double>(f[2]);
    const Complex s = zdotk / k2;
    out.c[0][m] = zx - s * static_cast<double>(f[0]);
    out.c[1][m] = zy - s * static_cast<double>(f[1]);
    out.c[2][m] = zz - s * static_cast<double>(f[2]);
  }
  out.solenoidal = true;
  return out;
}

double divergence_max(const SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  return det_max(n3, [&](std::size_t m) {
    const auto f = F.grid.freqs_of(m);
    const Complex d = F.c[0][m] * static_cast<double>(f[0]) +
                      F.c[1][m] * static_cast<double>(f[1]) +
                      F.c[2][m] * static_cast<double>(f[2]);
    return std::abs(d);
  });
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  const int bound = F.grid.dealias_bound();
  const int nyq = F.grid.nyquist();
  const std::size_t n3 = F.grid.size();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = F.grid.freqs_of(m);
    const bool kill = std::abs(f[0]) > bound || std::abs(f[1]) > bound ||
                      std::abs(f[2]) > bound || f[0] == nyq || f[1] == nyq ||
                      f[2] == nyq;
    if (kill) {
      out.c[0][m] = Complex(0.0, 0.0);
      out.c[1][m] = Complex(0.0, 0.0);
      out.c[2][m] = Complex(0.0, 0.0);
    }
  }
  return out;
}

SpectralField advective_convolution(const SpectralField& a, const SpectralField& b) {
  if (a.grid != b.grid)
    throw ConfigError("advective_convolution: grid mismatch (" +
                      std::to_string(a.grid.n()) + " vs " + std::to_string(b.grid.n()) + ")");
  const std::size_t n3 = a.grid.size();

  const PhysicalField adv = fft_inverse(a);

  // grad_j = inverse transform of (i xi_j) b, one 3-component field per j.
  PhysicalField grad[3];
  for (int j = 0; j < 3; ++j) {
    SpectralField db(b.grid);
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m) {
      const auto f = b.grid.freqs_of(m);
      const Complex ik(0.0, static_cast<double>(f[j]));
      db.c[0][m] = ik * b.c[0][m];
      db.c[1][m] = ik * b.c[1][m];
      db.c[2][m] = ik * b.c[2][m];
    }
    grad[j] = fft_inverse(db);
  }

  PhysicalField w(a.grid);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const double ax = adv.v[0][m], ay = adv.v[1][m], az = adv.v[2][m];
    for (int i = 0; i < 3; ++i)
      w.v[i][m] = ax * grad[0].v[i][m] + ay * grad[1].v[i][m] + az * grad[2].v[i][m];
  }

  SpectralField out = fft_forward(w);
  out.solenoidal = false;
  return dealias(out);
}

double cross_helicity(const SpectralField& u, const SpectralField& b) {
  const std::size_t n3 = u.grid.size();
  return det_sum(n3, [&](std::size_t m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (u.c[i][m] * std::conj(b.c[i][m])).real();
    return s;
  });
}

double grad_norm_sq(const SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  return det_sum(n3, [&](std::size_t m) {
    const auto f = F.grid.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] +
                      static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    return k2 * norm3(F.c[0][m], F.c[1][m], F.c[2][m]);
  });
}

double hermitian_residual(const SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  return det_max(n3, [&](std::size_t m) {
    const auto f = F.grid.freqs_of(m);
    double r = 0.0;
    if (F.grid.on_nyquist(f)) {
      // No conjugate partner; any content is a symmetry defect.
      for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(F.c[i][m]));
      return r;
    }
    const std::size_t mm = F.grid.flat_freq(-f[0], -f[1], -f[2]);
    for (int i = 0; i < 3; ++i)
      r = std::max(r, std::abs(F.c[i][mm] - std::conj(F.c[i][m])));
    return r;
  });
}

bool is_solenoidal(const SpectralField& F, double tol) {
  const std::size_t n3 = F.grid.size();
  const double worst = det_max(n3, [&](std::size_t m) {
    const auto f = F.grid.freqs_of(m);
    const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                static_cast<double>(f[1]) * f[1] +
                                static_cast<double>(f[2]) * f[2]);
    if (kn == 0.0) return 0.0;
    const double cn = std::sqrt(norm3(F.c[0][m], F.c[1][m], F.c[2][m]));
    const Complex d = F.c[0][m] * static_cast<double>(f[0]) +
                      F.c[1][m] * static_cast<double>(f[1]) +
                      F.c[2][m] * static_cast<double>(f[2]);
    const double cap = tol * kn * cn;
    return cap > 0.0 ? std::max(0.0, std::abs(d) - cap) : std::abs(d);
  });
  return worst <= 0.0;
}

void zero_mean_and_nyquist(SpectralField& F) {
  const std::size_t n3 = F.grid.size();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = F.grid.freqs_of(m);
    if ((f[0] == 0 && f[1] == 0 && f[2] == 0) || F.grid.on_nyquist(f)) {
      F.c[0][m] = Complex(0.0, 0.0);
      F.c[1][m] = Complex(0.0, 0.0);
      F.c[2][m] = Complex(0.0, 0.0);
    }
  }
}

void project_dealias_zero(SpectralField& F) {
  const int bound = F.grid.dealias_bound();
  const int nyq = F.grid.nyquist();
  const std::size_t n3 = F.grid.size();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = F.grid.freqs_of(m);
    const bool kill = std::abs(f[0]) > bound || std::abs(f[1]) > bound ||
                      std::abs(f[2]) > bound || f[0] == nyq || f[1] == nyq ||
                      f[2] == nyq || (f[0] == 0 && f[1] == 0 && f[2] == 0);
    if (kill) {
      F.c[0][m] = Complex(0.0, 0.0);
      F.c[1][m] = Complex(0.0, 0.0);
      F.c[2][m] = Complex(0.0, 0.0);
      continue;
    }
    const double k2 = static_cast<double>(f[0]) * f[0] +
                      static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    const Complex zdotk = F.c[0][m] * static_cast<double>(f[0]) +
                          F.c[1][m] * static_cast<double>(f[1]) +
                          F.c[2][m] * static_cast<double>(f[2]);
    const Complex s = zdotk / k2;
    F.c[0][m] -= s * static_cast<double>(f[0]);
    F.c[1][m] -= s * static_cast<double>(f[1]);
    F.c[2][m] -= s * static_cast<double>(f[2]);
  }
  F.solenoidal = true;
}

void hermitian_symmetrize(SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = F.grid.freqs_of(m);
    if (F.grid.on_nyquist(f)) {
      for (int i = 0; i < 3; ++i) F.c[i][m] = Complex(0.0, 0.0);
      continue;
    }
    if (f[0] == 0 && f[1] == 0 && f[2] == 0) {
      for (int i = 0; i < 3; ++i) F.c[i][m] = Complex(F.c[i][m].real(), 0.0);
      continue;
    }
    const bool canonical = f[0] > 0 || (f[0] == 0 && (f[1] > 0 || (f[1] == 0 && f[2] > 0)));
    if (!canonical) continue;
    const std::size_t mm = F.grid.flat_freq(-f[0], -f[1], -f[2]);
    for (int i = 0; i < 3; ++i) {
      const Complex avg = 0.5 * (F.c[i][m] + std::conj(F.c[i][mm]));
      F.c[i][m] = avg;
      F.c[i][mm] = std::conj(avg);
    }
  }
}

bool all_finite(const SpectralField& F) {
  const std::size_t n3 = F.grid.size();
  const double bad = det_max(n3, [&](std::size_t m) {
    for (int i = 0; i < 3; ++i)
      if (!std::isfinite(F.c[i][m].real()) || !std::isfinite(F.c[i][m].imag())) return 1.0;
    return 0.0;
  });
  return bad == 0.0;
}

}  // namespace mhds
