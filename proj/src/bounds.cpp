#include "mhds/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace mhds {

namespace {

const double kFourPi = 4.0 * 3.14159265358979323846264338327950288;

void require_positive(double v, const char* name) {
  if (!(v > 0.0))
    throw ConfigError(std::string(name) + " must be positive, got " + std::to_string(v));
}

double min_visc(double nu, double eta) { return nu < eta ? nu : eta; }

}  // namespace

double energy_bound_R_sq(double initial_energy, double injected_work) {
  return initial_energy + 2.0 * std::max(0.0, injected_work);
}

std::vector<double> select_R1(std::span<const double> R_sq_series,
                              std::span<const std::vector<double>> hp_series,
                              double delta, std::span<const double> p_grid,
                              double nu, double eta, double margin,
                              std::span<const double> hinf_series) {
  if (!(margin > 1.0)) throw ConfigError("R1 selection margin must exceed 1");
  require_positive(min_visc(nu, eta), "min(nu,eta)");
  require_positive(delta, "delta");
  const std::size_t samples = R_sq_series.size();
  std::vector<double> out(samples, 0.0);
  for (std::size_t j = 0; j < samples; ++j) {
    if (hp_series.size() == samples && hp_series[j].size() != p_grid.size())
      throw ConfigError("select_R1: h_p sample width does not match p grid");
    double worst = 0.0;
    for (std::size_t ip = 0; ip < p_grid.size(); ++ip) {
      const double p = p_grid[ip];
      const double coeff = std::pow(2.0, 1.0 / p) * std::pow(2.0 * delta, 3.0 / p);
      const double hp = hp_series.empty() ? 0.0 : hp_series[j][ip];
      worst = std::max(worst, coeff * R_sq_series[j] + 2.0 * hp);
    }
    // p = infinity: the coefficient degenerates to 1.
    const double hinf = hinf_series.empty() ? 0.0 : hinf_series[j];
    worst = std::max(worst, R_sq_series[j] + 2.0 * hinf);
    out[j] = margin * (6.0 / min_visc(nu, eta)) * worst;
  }
  for (std::size_t j = 1; j < samples; ++j) out[j] = std::max(out[j], out[j - 1]);
  return out;
}

double compute_F_inf(std::span<const double> times,
                     std::span<const std::vector<double>> sup_sq_per_probe) {
  if (sup_sq_per_probe.empty()) throw ConfigError("compute_F_inf: no probes");
  double worst = 0.0;
  for (const auto& series : sup_sq_per_probe) {
    if (series.size() != times.size())
      throw ConfigError("compute_F_inf: series length mismatch");
    double integral = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j)
      integral += 0.5 * (series[j] + series[j - 1]) * (times[j] - times[j - 1]);
    worst = std::max(worst, integral);
  }
  return worst;
}

double compute_R3(double R_sq_T, double F_inf, double nu, double eta) {
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  return 2.0 * R_sq_T / mv + 2.0 * F_inf / std::sqrt(mv);
}

double compute_R3_proof_variant(double R_sq_T, double F_p, double delta, double p) {
  require_positive(delta, "delta");
  return 4.0 * (std::pow(2.0 * delta, 3.0 / p) * R_sq_T + F_p);
}

double compute_R2(double R1_at_0, double R3) {
  return 0.5 * (R3 + std::sqrt(4.0 * R1_at_0 * R1_at_0 + R3 * R3));
}

double kolmogorov_curve(double C0, double eps, double k) {
  return C0 * std::pow(eps, 2.0 / 3.0) * std::pow(k, -5.0 / 3.0);
}

InertialRange inertial_bounds(double C0, double eps, double nu, double eta, double R1,
                              double R2, double T) {
  require_positive(C0, "C0");
  require_positive(eps, "eps");
  require_positive(R1, "R1");
  require_positive(R2, "R2");
  require_positive(T, "T");
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  InertialRange out;
  out.k1 = std::pow(C0, 0.6) * std::pow(eps, 0.4) / std::pow(kFourPi * R1 * R1, 0.6);
  const double a = kFourPi / (C0 * mv);
  out.k2 = a * a * a * std::pow(R2, 6.0) / (eps * eps * T * T * T);
  return out;
}

ConditionResult k41_condition(double C0, double eps, double nu, double eta, double R1,
                              double R2, double T) {
  require_positive(C0, "C0");
  require_positive(eps, "eps");
  require_positive(R1, "R1");
  require_positive(R2, "R2");
  require_positive(T, "T");
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  ConditionResult out;
  out.lhs = std::pow(mv, 5.0 / 6.0) * C0 * std::pow(eps, 2.0 / 3.0);
  out.rhs = kFourPi * std::pow(R2 / std::sqrt(T), 5.0 / 3.0) * std::cbrt(R1);
  out.margin = out.rhs - out.lhs;
  out.satisfied = out.lhs <= out.rhs;
  return out;
}

double max_time_T0(double C0, double eps, double nu, double eta, double R1, double R2) {
  require_positive(C0, "C0");
  require_positive(eps, "eps");
  require_positive(R1, "R1");
  require_positive(R2, "R2");
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  return std::pow(kFourPi, 1.2) * R2 * R2 * std::pow(R1, 0.4) /
         (std::pow(eps, 0.8) * std::pow(C0, 1.2) * mv);
}

double min_dissipation(double T0, double nu, double eta, double C0, double R1, double R2) {
  require_positive(T0, "T0");
  require_positive(C0, "C0");
  require_positive(R1, "R1");
  require_positive(R2, "R2");
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  return std::pow(kFourPi, 1.5) * std::sqrt(R1) * std::pow(R2, 2.5) /
         (std::pow(T0, 1.25) * std::pow(mv, 1.25) * std::pow(C0, 1.5));
}

RegionSQuery region_S(double k, double E_value, double R1, double R2, double nu,
                      double eta, double T) {
  require_positive(k, "k");
  const double mv = min_visc(nu, eta);
  require_positive(mv, "min(nu,eta)");
  require_positive(T, "T");
  RegionSQuery out;
  out.cap_energy = kFourPi * R1 * R1;
  out.cap_average = kFourPi * R2 * R2 / (mv * T * k * k);
  out.member = E_value >= 0.0 && E_value <= out.cap_energy && E_value <= out.cap_average;
  return out;
}

std::vector<std::array<double, 3>> region_S_boundary(double R1, double R2, double nu,
                                                     double eta, double T, double k_lo,
                                                     double k_hi, int samples) {
  if (samples < 2 || !(k_hi > k_lo) || !(k_lo > 0.0))
    throw ConfigError("region_S_boundary: need k_hi > k_lo > 0 and samples >= 2");
  std::vector<std::array<double, 3>> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  // Log-uniform sampling matches the log-log plot the region is drawn in.
  const double lr = std::log(k_hi / k_lo);
  for (int i = 0; i < samples; ++i) {
    const double k = k_lo * std::exp(lr * i / (samples - 1));
    const RegionSQuery q = region_S(k, 0.0, R1, R2, nu, eta, T);
    rows.push_back({k, q.cap_energy, q.cap_average});
  }
  return rows;
}

}  // namespace mhds
