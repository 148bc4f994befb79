#include "mhds/diagnostics.hpp"

#include <cmath>

#include "mhds/ramp.hpp"

namespace mhds {

namespace {

double vec_norm(const SpectralField& F, std::size_t m) {
  return std::sqrt(std::norm(F.c[0][m]) + std::norm(F.c[1][m]) + std::norm(F.c[2][m]));
}

}  // namespace

double CutoffSpec::center_norm() const {
  return std::sqrt(center[0] * center[0] + center[1] * center[1] + center[2] * center[2]);
}

double cutoff_ramp(double r, double delta) {
  r = std::abs(r);
  if (r <= 0.5 * delta) return 1.0;
  if (r >= delta) return 0.0;
  const double s = (r - 0.5 * delta) / (0.5 * delta);
  return 1.0 - quintic01(smooth01(s));
}

double CutoffSpec::value(double xi_x, double xi_y, double xi_z) const {
  return cutoff_ramp(xi_x - center[0], delta) * cutoff_ramp(xi_y - center[1], delta) *
         cutoff_ramp(xi_z - center[2], delta);
}

CutoffSpec make_cutoff(const std::array<double, 3>& k, double delta) {
  CutoffSpec cut;
  cut.center = k;
  cut.delta = delta;
  const double kn = cut.center_norm();
  if (kn == 0.0) throw ConfigError("cutoff center must be nonzero");
  const double bound = kn / (2.0 * std::sqrt(3.0));
  if (!(delta > 0.0) || !(delta < bound))
    throw ConfigError("cutoff width delta = " + std::to_string(delta) +
                      " violates 0 < delta < |k|/(2*sqrt(3)) = " + std::to_string(bound));
  return cut;
}

CutoffTable build_cutoff_table(const CutoffSpec& cut, const WavenumberGrid& grid) {
  CutoffTable table;
  // Support is the cube |xi_i - k_i| < delta; enumerate only those modes.
  for (int i = 0; i < 3; ++i) {
    const double lo = cut.center[i] - cut.delta;
    const double hi = cut.center[i] + cut.delta;
    if (lo < -grid.n() / 2 + 1 || hi > grid.n() / 2)
      throw ConfigError("cutoff support leaves the lattice; reduce |k| or delta");
  }
  const int ax_lo[3] = {static_cast<int>(std::ceil(cut.center[0] - cut.delta)),
                        static_cast<int>(std::ceil(cut.center[1] - cut.delta)),
                        static_cast<int>(std::ceil(cut.center[2] - cut.delta))};
  const int ax_hi[3] = {static_cast<int>(std::floor(cut.center[0] + cut.delta)),
                        static_cast<int>(std::floor(cut.center[1] + cut.delta)),
                        static_cast<int>(std::floor(cut.center[2] + cut.delta))};
  for (int fx = ax_lo[0]; fx <= ax_hi[0]; ++fx)
    for (int fy = ax_lo[1]; fy <= ax_hi[1]; ++fy)
      for (int fz = ax_lo[2]; fz <= ax_hi[2]; ++fz) {
        const double chi = cut.value(fx, fy, fz);
        if (chi > 0.0) table.entries.emplace_back(grid.flat_freq(fx, fy, fz), chi);
      }
  return table;
}

double e_p(const MHDState& state, const WavenumberGrid& grid, const CutoffTable& table,
           double p) {
  if (p < 2.0) throw ConfigError("e_p requires p >= 2");
  if (std::isinf(p)) {
    double worst = 0.0;
    for (const auto& [m, chi] : table.entries) {
      worst = std::max(worst, chi * vec_norm(state.u_hat, m));
      worst = std::max(worst, chi * vec_norm(state.b_hat, m));
    }
    return worst;
  }
  double sum = 0.0;
  for (const auto& [m, chi] : table.entries) {
    sum += std::pow(chi * vec_norm(state.u_hat, m), p);
    sum += std::pow(chi * vec_norm(state.b_hat, m), p);
  }
  sum *= grid.cell_measure();
  return sum > 0.0 ? std::pow(sum, 1.0 / p) : 0.0;
}

double e_p(const MHDState& state, const CutoffSpec& cut, double p) {
  const CutoffTable table = build_cutoff_table(cut, state.u_hat.grid);
  return e_p(state, state.u_hat.grid, table, p);
}

double h_p_sample(const SpectralField& f1, const SpectralField& f2,
                  const WavenumberGrid& grid, const CutoffTable& table, double p) {
  if (p < 2.0) throw ConfigError("h_p requires p >= 2");
  if (std::isinf(p)) {
    double worst = 0.0;
    for (const auto& [m, chi] : table.entries) {
      const auto f = grid.freqs_of(m);
      const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                  static_cast<double>(f[1]) * f[1] +
                                  static_cast<double>(f[2]) * f[2]);
      worst = std::max(worst, chi * vec_norm(f1, m) / kn);
      worst = std::max(worst, chi * vec_norm(f2, m) / kn);
    }
    return worst;
  }
  double sum = 0.0;
  for (const auto& [m, chi] : table.entries) {
    const auto f = grid.freqs_of(m);
    const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                static_cast<double>(f[1]) * f[1] +
                                static_cast<double>(f[2]) * f[2]);
    sum += std::pow(chi * vec_norm(f1, m) / kn, p);
    sum += std::pow(chi * vec_norm(f2, m) / kn, p);
  }
  sum *= grid.cell_measure();
  return sum > 0.0 ? std::pow(sum, 1.0 / p) : 0.0;
}

double forcing_sup_sq(const SpectralField& f1, const SpectralField& f2,
                      const CutoffTable& table) {
  double s1 = 0.0, s2 = 0.0;
  for (const auto& [m, chi] : table.entries) {
    s1 = std::max(s1, chi * vec_norm(f1, m));
    s2 = std::max(s2, chi * vec_norm(f2, m));
  }
  return s1 * s1 + s2 * s2;
}

ShellSpectrum shell_spectrum(const MHDState& state) {
  const WavenumberGrid& g = state.u_hat.grid;
  const int kmax = g.dealias_bound();
  ShellSpectrum out;
  out.t = state.t;
  out.shells.resize(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) out.shells[static_cast<std::size_t>(k - 1)].k = k;

  std::vector<double> sums(static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(kmax) + 1, 0);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const auto f = g.freqs_of(m);
    const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                static_cast<double>(f[1]) * f[1] +
                                static_cast<double>(f[2]) * f[2]);
    const int shell = static_cast<int>(std::floor(kn + 0.5));
    if (shell < 1 || shell > kmax) continue;
    counts[static_cast<std::size_t>(shell)]++;
    sums[static_cast<std::size_t>(shell)] += std::norm(state.u_hat.c[0][m]) +
                                             std::norm(state.u_hat.c[1][m]) +
                                             std::norm(state.u_hat.c[2][m]) +
                                             std::norm(state.b_hat.c[0][m]) +
                                             std::norm(state.b_hat.c[1][m]) +
                                             std::norm(state.b_hat.c[2][m]);
  }
  const double four_pi = 2.0 * WavenumberGrid::two_pi();
  for (int k = 1; k <= kmax; ++k) {
    auto& shell = out.shells[static_cast<std::size_t>(k - 1)];
    shell.count = counts[static_cast<std::size_t>(k)];
    shell.energy = shell.count == 0
                       ? 0.0
                       : four_pi * k * k * sums[static_cast<std::size_t>(k)] /
                             static_cast<double>(shell.count);
  }
  return out;
}

double dissipation_rate(const MHDState& state, double nu, double eta) {
  return nu * grad_norm_sq(state.u_hat) + eta * grad_norm_sq(state.b_hat);
}

double dissipation_rate(const MHDState& state, const SolverParams& params) {
  return dissipation_rate(state, params.nu, params.eta);
}

SlopeFit slope_fit(const ShellSpectrum& spectrum, int k_lo, int k_hi) {
  if (k_hi <= k_lo || k_lo < 1)
    throw ConfigError("slope_fit requires k_hi > k_lo >= 1");
  std::vector<double> lx, ly;
  for (const auto& shell : spectrum.shells) {
    if (shell.k < k_lo || shell.k > k_hi) continue;
    if (shell.count == 0 || shell.energy <= 0.0) continue;
    lx.push_back(std::log(static_cast<double>(shell.k)));
    ly.push_back(std::log(shell.energy));
  }
  if (lx.size() < 3)
    throw ConfigError("slope_fit: fewer than 3 usable shells in [" + std::to_string(k_lo) +
                      ", " + std::to_string(k_hi) + "]");
  const double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  SlopeFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace mhds
