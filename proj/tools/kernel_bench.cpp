// Timing comparison between the OpenMP kernels and the serial reference
// implementations, plus the FFT-path convolution against the direct sum.
// Every pairing is also checked for agreement before it is timed.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "mhds/reference.hpp"
#include "mhds/solver.hpp"
#include "mhds/threading.hpp"

using namespace mhds;

namespace {

SpectralField random_field(const WavenumberGrid& g, std::uint64_t seed) {
  SpectralField F(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (Complex& z : F.c[i]) z = Complex(normal(rng), normal(rng));
  hermitian_symmetrize(F);
  zero_mean_and_nyquist(F);
  return F;
}

template <class F>
double time_ms(int reps, F&& body) {
  body();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() * 1000.0 / reps;
}

void row(const char* name, int n, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-24s n=%-3d serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   agree %.2e\n",
              name, n, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
  apply_thread_cap_from_env();
  std::printf("kernel benchmark, %d OpenMP threads\n\n", omp_get_max_threads());

  for (int n : {16, 32, 48}) {
    const WavenumberGrid g(n);
    const SpectralField F = random_field(g, 11 + n);
    const int reps = n <= 16 ? 200 : 40;

    {
      volatile double sink = 0.0;
      const double diff = std::abs(parseval_energy(F) - ref::parseval_energy(F)) /
                          ref::parseval_energy(F);
      const double s = time_ms(reps, [&] { sink = ref::parseval_energy(F); });
      const double p = time_ms(reps, [&] { sink = parseval_energy(F); });
      row("parseval_energy", n, s, p, diff);
    }
    {
      volatile double sink = 0.0;
      const double diff =
          std::abs(grad_norm_sq(F) - ref::grad_norm_sq(F)) / ref::grad_norm_sq(F);
      const double s = time_ms(reps, [&] { sink = ref::grad_norm_sq(F); });
      const double p = time_ms(reps, [&] { sink = grad_norm_sq(F); });
      row("grad_norm_sq", n, s, p, diff);
    }
    {
      volatile double sink = 0.0;
      const double diff = std::abs(divergence_max(F) - ref::divergence_max(F));
      const double s = time_ms(reps, [&] { sink = ref::divergence_max(F); });
      const double p = time_ms(reps, [&] { sink = divergence_max(F); });
      row("divergence_max", n, s, p, diff);
    }
    {
      const SpectralField a = leray_project(F);
      const SpectralField b = ref::leray_project(F);
      double diff = 0.0;
      for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < g.size(); ++m)
          diff = std::max(diff, std::abs(a.c[i][m] - b.c[i][m]));
      const double s = time_ms(reps, [&] { (void)ref::leray_project(F); });
      const double p = time_ms(reps, [&] { (void)leray_project(F); });
      row("leray_project", n, s, p, diff);
    }
    {
      const SpectralField a = dealias(F);
      const SpectralField b = ref::dealias(F);
      double diff = 0.0;
      for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < g.size(); ++m)
          diff = std::max(diff, std::abs(a.c[i][m] - b.c[i][m]));
      const double s = time_ms(reps, [&] { (void)ref::dealias(F); });
      const double p = time_ms(reps, [&] { (void)dealias(F); });
      row("dealias", n, s, p, diff);
    }
    std::printf("\n");
  }

  // Pseudo-spectral convolution against the O(n^6) direct sum at n = 8.
  {
    const WavenumberGrid g(8);
    const SpectralField a = leray_project(dealias(random_field(g, 3)));
    const SpectralField b = leray_project(dealias(random_field(g, 4)));
    const SpectralField fast = advective_convolution(a, b);
    const SpectralField direct = ref::dealias(ref::advective_convolution_direct(a, b));
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i)
      for (std::size_t m = 0; m < g.size(); ++m) {
        diff = std::max(diff, std::abs(fast.c[i][m] - direct.c[i][m]));
        scale = std::max(scale, std::abs(direct.c[i][m]));
      }
    const double s = time_ms(3, [&] { (void)ref::advective_convolution_direct(a, b); });
    const double p = time_ms(50, [&] { (void)advective_convolution(a, b); });
    row("advective_convolution", 8, s, p, diff / scale);
  }

  // One full right-hand-side evaluation at production size.
  {
    SolverParams params;
    params.n = 32;
    MHDState s;
    s.u_hat = leray_project(dealias(random_field(WavenumberGrid(32), 5)));
    s.b_hat = leray_project(dealias(random_field(WavenumberGrid(32), 6)));
    const double p = time_ms(20, [&] { (void)rhs(s, params); });
    std::printf("\nrhs evaluation          n=32  %9.3f ms per call\n", p);
  }
  return 0;
}
