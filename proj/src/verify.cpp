#include "mhds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mhds {

namespace {

const double kFourPi = 2.0 * WavenumberGrid::two_pi();
const double kTol = 1e-12;  // margin >= -kTol * scale counts as satisfied

double sample_scale(double lhs, double rhs) {
  return std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

void finalize(CheckReport& report) {
  report.tolerance = kTol;
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const CheckSample& s : report.samples) {
    worst = std::min(worst, s.margin);
    if (s.margin < -kTol * sample_scale(s.lhs, s.rhs)) ok = false;
  }
  report.worst_margin = report.samples.empty() ? 0.0 : worst;
  report.verdict = ok ? Verdict::pass : Verdict::fail;
}

// Trapezoid over the recorded sample times.
double trapezoid(std::span<const double> times, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t j = 1; j < times.size(); ++j)
    acc += 0.5 * (values[j] + values[j - 1]) * (times[j] - times[j - 1]);
  return acc;
}

std::vector<double> sup_ep_series(const ProbeSeries& probe) {
  std::vector<double> out(probe.e_rows.size(), 0.0);
  for (std::size_t j = 0; j < probe.e_rows.size(); ++j)
    out[j] = *std::max_element(probe.e_rows[j].begin(), probe.e_rows[j].end());
  return out;
}

}  // namespace

double ProbeSpec::norm() const {
  return std::sqrt(static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                   static_cast<double>(k[2]) * k[2]);
}

std::string ProbeSpec::label() const {
  std::ostringstream os;
  os << "k=(" << k[0] << "," << k[1] << "," << k[2] << ") delta=" << delta;
  return os.str();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_unmet: return "hypothesis-unmet";
  }
  return "?";
}

std::vector<double> RunCheckData::R_sq_series() const {
  std::vector<double> out(records.size(), 0.0);
  for (std::size_t j = 0; j < records.size(); ++j)
    out[j] = energy_bound_R_sq(initial_energy, records[j].injected);
  return out;
}

RunCheckData collect_run_data(const SolverParams& params, std::span<const ProbeSpec> probes,
                              std::optional<MHDState> initial, const RunObserver& extra) {
  RunCheckData data;
  data.params = params;

  const WavenumberGrid grid(params.n);
  struct ProbeCtx {
    ProbeSeries* series;
    CutoffTable table;
    std::vector<double> running_h;  // one per p column (finite + infinity)
  };
  std::vector<ProbeCtx> ctxs;

  data.probes.resize(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    data.probes[i].spec = probes[i];
    const CutoffSpec cut = make_cutoff(
        {static_cast<double>(probes[i].k[0]), static_cast<double>(probes[i].k[1]),
         static_cast<double>(probes[i].k[2])},
        probes[i].delta);
    ctxs.push_back({&data.probes[i], build_cutoff_table(cut, grid),
                    std::vector<double>(probes[i].p_grid.size() + 1, 0.0)});
  }

  // Probes centered on each forced mode make the F_inf probe maximum exact:
  // chi = 1 at the forced coefficient itself.
  if (params.forcing.kind != ForcingSpec::Kind::zero) {
    for (const auto& mode : params.forcing.mode_set) {
      ProbeSpec ps;
      ps.k = mode;
      const double kn = ps.norm();
      ps.delta = 0.45 * kn / (2.0 * std::sqrt(3.0));
      ps.p_grid.clear();
      data.extra_probes.push_back({ps, {}, {}, {}});
    }
    for (auto& series : data.extra_probes) {
      const CutoffSpec cut = make_cutoff(
          {static_cast<double>(series.spec.k[0]), static_cast<double>(series.spec.k[1]),
           static_cast<double>(series.spec.k[2])},
          series.spec.delta);
      ctxs.push_back({&series, build_cutoff_table(cut, grid), std::vector<double>(1, 0.0)});
    }
  }

  run(
      params,
      [&](const MHDState& s, const EnergyRecord& r) {
        data.times.push_back(s.t);
        data.records.push_back(r);
        data.spectra.push_back(shell_spectrum(s));
        data.cross_helicity_series.push_back(cross_helicity(s.u_hat, s.b_hat));
        data.dissipation_series.push_back(dissipation_rate(s, params));

        SpectralField f1, f2;
        const bool forced = params.forcing.kind != ForcingSpec::Kind::zero;
        if (forced) forcing_eval(params.forcing, s.u_hat.grid, s.t, f1, f2);

        for (ProbeCtx& ctx : ctxs) {
          ProbeSeries& series = *ctx.series;
          const auto& p_grid = series.spec.p_grid;
          if (!p_grid.empty()) {
            std::vector<double> e_row(p_grid.size() + 1, 0.0);
            for (std::size_t ip = 0; ip < p_grid.size(); ++ip)
              e_row[ip] = e_p(s, s.u_hat.grid, ctx.table, p_grid[ip]);
            e_row[p_grid.size()] = e_p(s, s.u_hat.grid, ctx.table, p_infinity());
            series.e_rows.push_back(std::move(e_row));
          }
          if (forced) {
            for (std::size_t ip = 0; ip < p_grid.size(); ++ip)
              ctx.running_h[ip] = std::max(
                  ctx.running_h[ip], h_p_sample(f1, f2, s.u_hat.grid, ctx.table, p_grid[ip]));
            ctx.running_h[p_grid.size()] = std::max(
                ctx.running_h[p_grid.size()],
                h_p_sample(f1, f2, s.u_hat.grid, ctx.table, p_infinity()));
            series.sup_sq.push_back(forcing_sup_sq(f1, f2, ctx.table));
          } else {
            series.sup_sq.push_back(0.0);
          }
          series.h_rows.push_back(ctx.running_h);
        }
        if (extra) extra(s, r);
      },
      std::move(initial));

  data.initial_energy = data.records.front().kinetic + data.records.front().magnetic;
  const double T = data.total_time();
  data.eps_mean = T > 0.0 ? trapezoid(data.times, data.dissipation_series) / T
                          : data.dissipation_series.front();
  return data;
}

CheckReport check_e2_containment(const RunCheckData& data, const ProbeSeries& probe,
                                 std::span<const double> R1_series) {
  CheckReport report;
  report.name = "e2-containment";
  report.probe = probe.spec.label();
  const double kn = probe.spec.norm();
  const double mv = data.params.min_visc();
  const double coeff = std::pow(2.0 * probe.spec.delta, 1.5) * std::sqrt(2.0);
  const auto R_sq = data.R_sq_series();

  // p = 2 must be part of the probe grid.
  const auto it = std::find(probe.spec.p_grid.begin(), probe.spec.p_grid.end(), 2.0);
  if (it == probe.spec.p_grid.end()) {
    report.verdict = Verdict::hypothesis_unmet;
    report.note = "probe has no p = 2 column";
    return report;
  }
  const std::size_t ip2 = static_cast<std::size_t>(it - probe.spec.p_grid.begin());

  for (std::size_t j = 0; j < data.times.size(); ++j) {
    const double lhs30 = coeff * R_sq[j] + 2.0 * probe.h_rows[j][ip2];
    if (!(lhs30 < (mv / 6.0) * R1_series[j])) {
      report.verdict = Verdict::hypothesis_unmet;
      report.note = "selection hypothesis fails at t = " + std::to_string(data.times[j]);
      return report;
    }
  }
  if (!(probe.e_rows.front()[ip2] < R1_series.front() / kn)) {
    report.verdict = Verdict::hypothesis_unmet;
    report.note = "initial condition e_2(k,0) < R1(0)/|k| fails";
    return report;
  }

  for (std::size_t j = 0; j < data.times.size(); ++j) {
    CheckSample s;
    s.t = data.times[j];
    s.lhs = probe.e_rows[j][ip2];
    s.rhs = R1_series[j] / kn;
    s.margin = s.rhs - s.lhs;
    report.samples.push_back(s);
  }
  finalize(report);
  return report;
}

CheckReport check_sup_ep_containment(const RunCheckData& data, const ProbeSeries& probe,
                                     std::span<const double> R1_series) {
  CheckReport report;
  report.name = "sup-ep-containment";
  report.probe = probe.spec.label();
  const double kn = probe.spec.norm();
  const double mv = data.params.min_visc();
  const auto R_sq = data.R_sq_series();

  for (std::size_t j = 0; j < data.times.size(); ++j) {
    for (std::size_t ip = 0; ip <= probe.spec.p_grid.size(); ++ip) {
      const bool inf = ip == probe.spec.p_grid.size();
      const double p = inf ? p_infinity() : probe.spec.p_grid[ip];
      const double coeff =
          inf ? 1.0 : std::pow(2.0, 1.0 / p) * std::pow(2.0 * probe.spec.delta, 3.0 / p);
      const double lhs = coeff * R_sq[j] + 2.0 * probe.h_rows[j][ip];
      if (!(lhs < (mv / 6.0) * R1_series[j])) {
        report.verdict = Verdict::hypothesis_unmet;
        report.note = "selection hypothesis fails for p index " + std::to_string(ip) +
                      " at t = " + std::to_string(data.times[j]);
        return report;
      }
    }
  }
  const auto sup0 = *std::max_element(probe.e_rows.front().begin(), probe.e_rows.front().end());
  if (!(sup0 < R1_series.front() / kn)) {
    report.verdict = Verdict::hypothesis_unmet;
    report.note = "initial condition sup_p e_p(k,0) < R1(0)/|k| fails";
    return report;
  }

  const std::vector<double> sup = sup_ep_series(probe);
  for (std::size_t j = 0; j < data.times.size(); ++j) {
    CheckSample s;
    s.t = data.times[j];
    s.lhs = sup[j];
    s.rhs = R1_series[j] / kn;
    s.margin = s.rhs - s.lhs;
    report.samples.push_back(s);
  }
  finalize(report);
  return report;
}

CheckReport check_ep_time_integral(const RunCheckData& data, const ProbeSeries& probe,
                                   std::span<const double> R1_series, double R2_T) {
  CheckReport report;
  report.name = "ep-time-integral-bound";
  report.probe = probe.spec.label();
  const double kn = probe.spec.norm();
  const double mv = data.params.min_visc();

  const auto sup0 = *std::max_element(probe.e_rows.front().begin(), probe.e_rows.front().end());
  if (!(sup0 < R1_series.front() / kn)) {
    report.verdict = Verdict::hypothesis_unmet;
    report.note = "initial condition sup_p e_p(k,0) < R1(0)/|k| fails";
    return report;
  }

  const std::vector<double> sup = sup_ep_series(probe);
  CheckSample s;
  s.t = data.total_time();
  s.lhs = trapezoid(data.times, sup);
  s.rhs = R2_T * R2_T / (mv * kn * kn * kn * kn);
  s.margin = s.rhs - s.lhs;
  report.samples.push_back(s);
  finalize(report);
  return report;
}

CheckReport check_shell_energy_cap(const RunCheckData& data, int shell_lo, int shell_hi,
                                   std::span<const std::vector<double>> R1_per_shell) {
  CheckReport report;
  report.name = "shell-energy-cap";
  if (R1_per_shell.size() != static_cast<std::size_t>(shell_hi - shell_lo + 1))
    throw ConfigError("check_shell_energy_cap: need one R1 series per shell");
  for (int k = shell_lo; k <= shell_hi; ++k) {
    const auto& R1 = R1_per_shell[static_cast<std::size_t>(k - shell_lo)];
    for (std::size_t j = 0; j < data.times.size(); ++j) {
      const auto& shell = data.spectra[j].shells[static_cast<std::size_t>(k - 1)];
      CheckSample s;
      s.t = data.times[j];
      s.lhs = shell.energy;
      s.rhs = kFourPi * R1[j] * R1[j];
      s.margin = s.rhs - s.lhs;
      report.samples.push_back(s);
    }
  }
  finalize(report);
  report.note = "shells " + std::to_string(shell_lo) + ".." + std::to_string(shell_hi);
  return report;
}

CheckReport check_shell_average_cap(const RunCheckData& data, int shell_lo, int shell_hi,
                                    std::span<const double> R2_per_shell) {
  CheckReport report;
  report.name = "shell-time-average-cap";
  if (R2_per_shell.size() != static_cast<std::size_t>(shell_hi - shell_lo + 1))
    throw ConfigError("check_shell_average_cap: need one R2 value per shell");
  const double T = data.total_time();
  const double mv = data.params.min_visc();
  for (int k = shell_lo; k <= shell_hi; ++k) {
    std::vector<double> series(data.times.size(), 0.0);
    for (std::size_t j = 0; j < data.times.size(); ++j)
      series[j] = data.spectra[j].shells[static_cast<std::size_t>(k - 1)].energy;
    const double R2 = R2_per_shell[static_cast<std::size_t>(k - shell_lo)];
    CheckSample s;
    s.t = T;
    s.lhs = trapezoid(data.times, series) / T;
    s.rhs = kFourPi * R2 * R2 / (mv * T * static_cast<double>(k) * k);
    s.margin = s.rhs - s.lhs;
    report.samples.push_back(s);
  }
  finalize(report);
  report.note = "shells " + std::to_string(shell_lo) + ".." + std::to_string(shell_hi);
  return report;
}

CheckReport check_ideal_invariants(const RunCheckData& data) {
  CheckReport report;
  report.name = "ideal-quadratic-invariants";
  if (data.params.nu != 0.0 || data.params.eta != 0.0 ||
      data.params.forcing.kind != ForcingSpec::Kind::zero) {
    report.verdict = Verdict::hypothesis_unmet;
    report.note = "requires nu = eta = 0 and zero forcing";
    return report;
  }
  const double tol = 1e-6;
  const double e0 = data.records.front().kinetic + data.records.front().magnetic;
  const double hc0 = data.cross_helicity_series.front();
  const double hc_scale = std::max(std::abs(hc0), e0);
  for (std::size_t j = 0; j < data.times.size(); ++j) {
    const double e = data.records[j].kinetic + data.records[j].magnetic;
    CheckSample se;
    se.t = data.times[j];
    se.lhs = e0 > 0.0 ? std::abs(e - e0) / e0 : std::abs(e - e0);
    se.rhs = tol;
    se.margin = se.rhs - se.lhs;
    report.samples.push_back(se);
    CheckSample sh;
    sh.t = data.times[j];
    sh.lhs = hc_scale > 0.0 ? std::abs(data.cross_helicity_series[j] - hc0) / hc_scale : 0.0;
    sh.rhs = tol;
    sh.margin = sh.rhs - sh.lhs;
    report.samples.push_back(sh);
  }
  finalize(report);
  report.note = "energy and cross-helicity relative drift vs 1e-6";
  return report;
}

std::vector<double> select_R1_for_probe(const RunCheckData& data, const ProbeSeries& probe,
                                        double margin) {
  const auto R_sq = data.R_sq_series();
  std::vector<std::vector<double>> hp(data.times.size());
  std::vector<double> hinf(data.times.size());
  for (std::size_t j = 0; j < data.times.size(); ++j) {
    hp[j] = probe.h_rows[j];
    hp[j].pop_back();  // last column is the infinity entry
    hinf[j] = probe.h_rows[j].back();
  }
  return select_R1(R_sq, hp, probe.spec.delta, probe.spec.p_grid, data.params.nu,
                   data.params.eta, margin, hinf);
}

double probe_F_inf(const RunCheckData& data) {
  std::vector<std::vector<double>> sup_series;
  for (const auto& p : data.probes) sup_series.push_back(p.sup_sq);
  for (const auto& p : data.extra_probes) sup_series.push_back(p.sup_sq);
  if (sup_series.empty()) return 0.0;
  return compute_F_inf(data.times, sup_series);
}

VerifyOutcome run_all_checks(const VerifySetup& setup, std::optional<MHDState> initial) {
  VerifyOutcome out;
  const WavenumberGrid grid(setup.params.n);

  // Shell probes feed the R1/R2 caps of the per-shell checks. Shells below
  // |k| = 2 sqrt(3) cannot host a delta >= 1 cutoff; they use a scaled-down
  // width (no e_p probe is read off them, only the selection hypothesis).
  const int shell_hi = std::min(setup.shell_hi, grid.dealias_bound());
  const int shell_lo = std::max(2, setup.shell_lo);
  std::vector<ProbeSpec> shell_probes;
  for (int k = shell_lo; k <= shell_hi; ++k) {
    ProbeSpec ps;
    ps.k = {k, 0, 0};
    ps.delta = std::min(1.0, 0.9 * k / (2.0 * std::sqrt(3.0)));
    shell_probes.push_back(ps);
  }

  std::vector<ProbeSpec> all_probes = setup.probes;
  all_probes.insert(all_probes.end(), shell_probes.begin(), shell_probes.end());

  // The bound family divides by min(nu,eta): on ideal runs only the
  // invariant check applies.
  const bool viscous = setup.params.min_visc() > 0.0;
  if (!viscous) all_probes.clear();

  RunCheckData data = collect_run_data(setup.params, all_probes, std::move(initial));
  out.eps_mean = data.eps_mean;
  const auto R_sq = data.R_sq_series();
  out.R_sq_T = R_sq.back();

  if (viscous && !data.probes.empty()) {
    out.F_inf = probe_F_inf(data);
    const double R3 = compute_R3(R_sq.back(), out.F_inf, setup.params.nu, setup.params.eta);

  auto select_for = [&](const ProbeSeries& probe) {
    return select_R1_for_probe(data, probe, setup.margin);
  };

    const std::size_t n_user = setup.probes.size();
    for (std::size_t i = 0; i < n_user; ++i) {
      const ProbeSeries& probe = data.probes[i];
      const auto R1 = select_for(probe);
      out.reports.push_back(check_e2_containment(data, probe, R1));
      out.reports.push_back(check_sup_ep_containment(data, probe, R1));
      const double R2 = compute_R2(R1.front(), R3);
      out.reports.push_back(check_ep_time_integral(data, probe, R1, R2));
    }

    if (shell_hi >= shell_lo) {
      std::vector<std::vector<double>> R1_shells;
      std::vector<double> R2_shells;
      for (std::size_t i = n_user; i < data.probes.size(); ++i) {
        const auto R1 = select_for(data.probes[i]);
        R2_shells.push_back(compute_R2(R1.front(), R3));
        R1_shells.push_back(R1);
      }
      out.reports.push_back(check_shell_energy_cap(data, shell_lo, shell_hi, R1_shells));
      out.reports.push_back(check_shell_average_cap(data, shell_lo, shell_hi, R2_shells));
    }
  }

  if (setup.params.nu == 0.0 && setup.params.eta == 0.0 &&
      setup.params.forcing.kind == ForcingSpec::Kind::zero)
    out.reports.push_back(check_ideal_invariants(data));

  for (const CheckReport& r : out.reports)
    if (r.verdict == Verdict::fail) out.any_failure = true;
  return out;
}

}  // namespace mhds
