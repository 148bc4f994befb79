#include "mhds/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace mhds {

namespace {

// One cached plan pair per grid size. Plans are created with FFTW_ESTIMATE:
// deterministic plan choice, no input-dependent timing. Each plan owns its
// scratch buffer; execution is serialized per grid size.
struct PlanSet {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n3 = 0;
  std::mutex mtx;

  void init(int n) {
    n3 = static_cast<std::size_t>(n) * n * n;
    buf = fftw_alloc_complex(3 * n3);
    const int dims[3] = {n, n, n};
    fwd = fftw_plan_many_dft(3, dims, 3, buf, nullptr, 1, static_cast<int>(n3),
                             buf, nullptr, 1, static_cast<int>(n3),
                             FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_many_dft(3, dims, 3, buf, nullptr, 1, static_cast<int>(n3),
                             buf, nullptr, 1, static_cast<int>(n3),
                             FFTW_BACKWARD, FFTW_ESTIMATE);
  }
};

PlanSet& plans_for(int n) {
  static std::map<int, PlanSet> cache;
  static std::mutex cache_mtx;
  std::lock_guard<std::mutex> lock(cache_mtx);
  PlanSet& p = cache[n];
  if (p.buf == nullptr) p.init(n);
  return p;
}

}  // namespace

SpectralField fft_forward(const PhysicalField& f) {
  const int n = f.grid.n();
  const std::size_t n3 = f.grid.size();
  SpectralField out(f.grid);
  PlanSet& p = plans_for(n);
  std::lock_guard<std::mutex> lock(p.mtx);
  for (int comp = 0; comp < 3; ++comp) {
    fftw_complex* dst = p.buf + comp * n3;
    const double* src = f.v[static_cast<std::size_t>(comp)].data();
    for (std::size_t m = 0; m < n3; ++m) {
      dst[m][0] = src[m];
      dst[m][1] = 0.0;
    }
  }
  fftw_execute(p.fwd);
  const double scale = 1.0 / static_cast<double>(n3);
  for (int comp = 0; comp < 3; ++comp) {
    const fftw_complex* src = p.buf + comp * n3;
    Complex* dst = out.c[static_cast<std::size_t>(comp)].data();
    for (std::size_t m = 0; m < n3; ++m)
      dst[m] = Complex(src[m][0] * scale, src[m][1] * scale);
  }
  return out;
}

PhysicalField fft_inverse(const SpectralField& F) {
  const int n = F.grid.n();
  const std::size_t n3 = F.grid.size();
  PhysicalField out(F.grid);
  PlanSet& p = plans_for(n);
  std::lock_guard<std::mutex> lock(p.mtx);
  for (int comp = 0; comp < 3; ++comp) {
    fftw_complex* dst = p.buf + comp * n3;
    const Complex* src = F.c[static_cast<std::size_t>(comp)].data();
    for (std::size_t m = 0; m < n3; ++m) {
      dst[m][0] = src[m].real();
      dst[m][1] = src[m].imag();
    }
  }
  fftw_execute(p.bwd);
  for (int comp = 0; comp < 3; ++comp) {
    const fftw_complex* src = p.buf + comp * n3;
    double* dst = out.v[static_cast<std::size_t>(comp)].data();
    // Hermitian inputs give a real result; the imaginary residue is rounding
    // noise and is dropped.
    for (std::size_t m = 0; m < n3; ++m) dst[m] = src[m][0];
  }
  return out;
}

}  // namespace mhds
