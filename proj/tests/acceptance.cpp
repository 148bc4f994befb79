// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria 4 and 6-8 share one 500-step decaying run at n = 32.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mhds/io.hpp"
#include "mhds/reference.hpp"
#include "mhds/threading.hpp"

using namespace mhds;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Criterion> g_results;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  g_results.push_back({id, name, pass, detail, seconds});
  std::printf("[%2d/11] %s  %-34s %s  (%.2f s)\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- criterion 1: Parseval identity ---------------------------------------

void criterion_parseval() {
  Timer timer;
  double worst = 0.0;
  for (int n : {8, 12, 16, 24, 32}) {
    const WavenumberGrid g(n);
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      const PhysicalField f = test::random_physical(g, 1000 + n + seed);
      const double phys = physical_energy(f);
      const double spec = parseval_energy(fft_forward(f));
      worst = std::max(worst, std::abs(phys - spec) / phys);
    }
  }
  const double sec = timer.seconds();
  report(1, "parseval-identity", worst < 1e-12 && sec < 1.0,
         "max rel err " + fmtg(worst) + ", budget 1e-12; runtime < 1 s", sec);
}

// ---- criterion 2: Leray projector ------------------------------------------

void criterion_leray() {
  Timer timer;
  double worst = 0.0;

  // Per-mode oracle at n = 4: annihilation of parallel parts, preservation
  // of orthogonal parts, agreement with an independently coded projector.
  const WavenumberGrid g4(4);
  SpectralField parallel(g4), orthogonal(g4);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t m = 0; m < g4.size(); ++m) {
    const auto f = g4.freqs_of(m);
    if ((f[0] == 0 && f[1] == 0 && f[2] == 0) || g4.on_nyquist(f)) continue;
    const Complex scale(normal(rng), normal(rng));
    for (int i = 0; i < 3; ++i) parallel.c[i][m] = scale * static_cast<double>(f[i]);
    // Any vector crossed with the mode is orthogonal to it.
    const double a[3] = {normal(rng), normal(rng), normal(rng)};
    orthogonal.c[0][m] = Complex(a[1] * f[2] - a[2] * f[1], 0.3);
    orthogonal.c[1][m] = Complex(a[2] * f[0] - a[0] * f[2], -0.1);
    orthogonal.c[2][m] = Complex(a[0] * f[1] - a[1] * f[0], 0.0);
    // Keep the imaginary part orthogonal too.
    const Complex zdotk = orthogonal.c[0][m] * static_cast<double>(f[0]) +
                          orthogonal.c[1][m] * static_cast<double>(f[1]) +
                          orthogonal.c[2][m] * static_cast<double>(f[2]);
    const double k2 = static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    for (int i = 0; i < 3; ++i) orthogonal.c[i][m] -= zdotk * static_cast<double>(f[i]) / k2;
  }
  const SpectralField pk = leray_project(parallel);
  worst = std::max(worst, test::max_coeff_abs(pk));
  const SpectralField po = leray_project(orthogonal);
  worst = std::max(worst, test::max_coeff_diff(po, orthogonal));
  worst = std::max(worst, test::max_coeff_diff(leray_project(orthogonal),
                                               ref::leray_project(orthogonal)));

  // Idempotence on random data at n = 8.
  const SpectralField F = test::random_spectral(WavenumberGrid(8), 78);
  const SpectralField P = leray_project(F);
  worst = std::max(worst, test::max_coeff_diff(P, leray_project(P)));

  const double sec = timer.seconds();
  report(2, "leray-projector", worst < 1e-13,
         "worst defect " + fmtg(worst) + ", budget 1e-13", sec);
}

// ---- criterion 3: nonlinear-term oracle ------------------------------------

void criterion_rhs_oracle() {
  Timer timer;
  SolverParams p;
  p.n = 8;
  p.nu = 0.07;
  p.eta = 0.03;
  MHDState s;
  s.u_hat = test::random_solenoidal(WavenumberGrid(8), 81);
  s.b_hat = test::random_solenoidal(WavenumberGrid(8), 82);

  const RhsResult fast = rhs(s, p);

  const SpectralField cuu = ref::dealias(ref::advective_convolution_direct(s.u_hat, s.u_hat));
  const SpectralField cbb = ref::dealias(ref::advective_convolution_direct(s.b_hat, s.b_hat));
  const SpectralField cbu = ref::dealias(ref::advective_convolution_direct(s.b_hat, s.u_hat));
  const SpectralField cub = ref::dealias(ref::advective_convolution_direct(s.u_hat, s.b_hat));
  const WavenumberGrid& g = s.u_hat.grid;
  SpectralField du(g), db(g);
  for (int i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < g.size(); ++m) {
      du.c[i][m] = cbb.c[i][m] - cuu.c[i][m];
      db.c[i][m] = cbu.c[i][m] - cub.c[i][m];
    }
  du = ref::leray_project(du);
  db = ref::leray_project(db);
  for (int i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < g.size(); ++m) {
      const auto f = g.freqs_of(m);
      const double k2 = static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1] +
                        static_cast<double>(f[2]) * f[2];
      du.c[i][m] -= p.nu * k2 * s.u_hat.c[i][m];
      db.c[i][m] -= p.eta * k2 * s.b_hat.c[i][m];
    }
  zero_mean_and_nyquist(du);
  zero_mean_and_nyquist(db);

  const double scale = std::max(test::max_coeff_abs(du), test::max_coeff_abs(db));
  const double err = std::max(test::max_coeff_diff(fast.du, du),
                              test::max_coeff_diff(fast.db, db)) /
                     scale;
  const double sec = timer.seconds();
  report(3, "nonlinear-term-oracle", err < 1e-10 && sec < 30.0,
         "rel err vs direct O(n^6) sum " + fmtg(err) + ", budget 1e-10; runtime < 30 s", sec);
}

// ---- criteria 4 and 6-8: shared decaying run at n = 32 ---------------------

SolverParams main_run_params() {
  SolverParams p;
  p.n = 32;
  p.nu = 0.05;
  p.eta = 0.05;
  p.dt = 0.01;
  p.t_end = 5.0;  // 500 steps
  p.snapshot_cadence = 10;
  p.init.kind = InitSpec::Kind::orszag_tang;
  return p;
}

void criteria_run_based() {
  Timer timer;

  ProbeSpec probe4;
  probe4.k = {4, 0, 0};
  probe4.delta = 1.0;
  ProbeSpec probe8;
  probe8.k = {8, 0, 0};
  probe8.delta = 1.0;

  VerifySetup setup;
  setup.params = main_run_params();
  setup.probes = {probe4, probe8};
  setup.margin = 1.1;
  setup.shell_lo = 2;
  setup.shell_hi = 10;

  // Shell probes feed the per-shell caps of criteria 8 (as in run_all_checks).
  std::vector<ProbeSpec> all_probes = setup.probes;
  for (int k = setup.shell_lo; k <= setup.shell_hi; ++k) {
    ProbeSpec ps;
    ps.k = {k, 0, 0};
    ps.delta = std::min(1.0, 0.9 * k / (2.0 * std::sqrt(3.0)));
    all_probes.push_back(ps);
  }
  const RunCheckData data = collect_run_data(setup.params, all_probes);

  // Criterion 4: inequality residual at every snapshot, then two dt
  // refinements over a short horizon of the same configuration.
  {
    const double e0 = data.records.front().kinetic + data.records.front().magnetic;
    double worst = -1e300;
    for (const EnergyRecord& r : data.records) worst = std::max(worst, r.residual);
    const bool within = worst <= 1e-6 * e0;

    std::vector<double> residuals;
    for (double dt : {0.01, 0.005, 0.0025}) {
      SolverParams p = main_run_params();
      p.dt = dt;
      p.t_end = 0.4;
      p.snapshot_cadence = 1 << 30;
      const Trajectory traj = run(p);
      residuals.push_back(std::abs(traj.records.back().residual));
    }
    const double r01 = residuals[0] / residuals[1];
    const double r12 = residuals[1] / residuals[2];
    const bool fourth_order = r01 > 8.0 && r12 > 8.0;
    const double sec = timer.seconds();
    report(4, "energy-inequality-ledger", within && fourth_order && sec < 120.0,
           "max residual " + fmtg(worst) + " vs " + fmtg(1e-6 * e0) +
               "; refinement ratios " + fmtg(r01) + ", " + fmtg(r12) +
               " (16 expected); runtime < 2 min",
           sec);
  }

  // Criteria 6-8 reuse the collected run: probe containment caps, the
  // probe time-integral cap, and the per-shell spectrum caps.
  {
    Timer t68;
    const double R3 = compute_R3(data.R_sq_series().back(), probe_F_inf(data),
                                 setup.params.nu, setup.params.eta);
    bool pass67 = true, pass_28 = true;
    double worst67 = 1e300, worst28 = 1e300;
    for (std::size_t i = 0; i < setup.probes.size(); ++i) {
      const auto R1 = select_R1_for_probe(data, data.probes[i], setup.margin);
      const CheckReport contained = check_e2_containment(data, data.probes[i], R1);
      const CheckReport sup_contained = check_sup_ep_containment(data, data.probes[i], R1);
      pass67 = pass67 && contained.verdict == Verdict::pass && contained.worst_margin > 0.0 &&
               sup_contained.verdict == Verdict::pass && sup_contained.worst_margin > 0.0;
      worst67 = std::min({worst67, contained.worst_margin, sup_contained.worst_margin});
      const CheckReport integral =
          check_ep_time_integral(data, data.probes[i], R1, compute_R2(R1.front(), R3));
      pass_28 = pass_28 && integral.verdict == Verdict::pass;
      worst28 = std::min(worst28, integral.worst_margin);
    }
    report(6, "ep-containment-caps", pass67,
           "probes |k| in {4,8}, all p, all snapshots; min margin " + fmtg(worst67),
           t68.seconds());
    report(7, "ep-time-integral-cap", pass_28, "min margin " + fmtg(worst28), 0.0);

    std::vector<std::vector<double>> R1_shells;
    std::vector<double> R2_shells;
    for (std::size_t i = setup.probes.size(); i < data.probes.size(); ++i) {
      const auto R1 = select_R1_for_probe(data, data.probes[i], setup.margin);
      R2_shells.push_back(compute_R2(R1.front(), R3));
      R1_shells.push_back(R1);
    }
    const CheckReport cap_e = check_shell_energy_cap(data, 2, 10, R1_shells);
    const CheckReport cap_avg = check_shell_average_cap(data, 2, 10, R2_shells);
    report(8, "shell-spectrum-caps",
           cap_e.verdict == Verdict::pass && cap_avg.verdict == Verdict::pass,
           "shells 2..10; min margins " + fmtg(cap_e.worst_margin) + ", " +
               fmtg(cap_avg.worst_margin),
           0.0);
  }
}

// ---- criterion 5: ideal invariants ------------------------------------------

void criterion_ideal() {
  Timer timer;
  SolverParams p = main_run_params();
  p.nu = 0.0;
  p.eta = 0.0;
  p.dt = 0.005;
  p.t_end = 0.5;  // 100 steps
  p.snapshot_cadence = 10;
  const RunCheckData data = collect_run_data(p, {});
  const CheckReport check = check_ideal_invariants(data);
  double drift_e = 0.0, drift_h = 0.0;
  const double e0 = data.records.front().kinetic + data.records.front().magnetic;
  const double h0 = data.cross_helicity_series.front();
  for (std::size_t j = 0; j < data.times.size(); ++j) {
    const double e = data.records[j].kinetic + data.records[j].magnetic;
    drift_e = std::max(drift_e, std::abs(e - e0) / e0);
    drift_h = std::max(drift_h,
                       std::abs(data.cross_helicity_series[j] - h0) /
                           std::max(std::abs(h0), e0));
  }
  const double sec = timer.seconds();
  report(5, "ideal-invariants", check.verdict == Verdict::pass,
         "100 steps at n = 32: energy drift " + fmtg(drift_e) + ", cross-helicity drift " +
             fmtg(drift_h) + ", budget 1e-6",
         sec);
}

// ---- criterion 9: bounds algebra --------------------------------------------

void criterion_bounds_algebra() {
  Timer timer;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  auto draw = [&] { return std::pow(10.0, uni(rng)); };

  int disagreements = 0;
  double worst_resub = 0.0, worst_close = 0.0, worst_round = 0.0;
  bool boundary_ok = true;
  const double four_pi = 2.0 * WavenumberGrid::two_pi();
  for (int it = 0; it < 10000; ++it) {
    const double C0 = draw(), eps = draw(), nu = draw(), eta = draw(), R1 = draw(),
                 R2 = draw(), T = draw();
    const double mv = std::min(nu, eta);
    const InertialRange r = inertial_bounds(C0, eps, nu, eta, R1, R2, T);
    const ConditionResult cond = k41_condition(C0, eps, nu, eta, R1, R2, T);
    if ((r.k1 <= r.k2) != cond.satisfied) {
      ++disagreements;
      if (std::abs(r.k1 - r.k2) / std::max(r.k1, r.k2) > 1e-9) boundary_ok = false;
    }
    const double resub1 =
        std::abs(kolmogorov_curve(C0, eps, r.k1) - four_pi * R1 * R1) / (four_pi * R1 * R1);
    const double cap2 = four_pi * R2 * R2 / (mv * T * r.k2 * r.k2);
    const double resub2 = std::abs(kolmogorov_curve(C0, eps, r.k2) - cap2) / cap2;
    worst_resub = std::max({worst_resub, resub1, resub2});

    const double T0 = max_time_T0(C0, eps, nu, eta, R1, R2);
    const InertialRange rc = inertial_bounds(C0, eps, nu, eta, R1, R2, T0);
    worst_close = std::max(worst_close, std::abs(rc.k1 - rc.k2) / rc.k1);
    const double eps_back = min_dissipation(T0, nu, eta, C0, R1, R2);
    worst_round = std::max(worst_round, std::abs(eps_back - eps) / eps);
  }
  const double sec = timer.seconds();
  const bool pass = boundary_ok && worst_resub < 1e-10 && worst_close < 1e-10 &&
                    worst_round < 1e-10 && sec < 5.0;
  report(9, "bounds-algebra-sweep", pass,
         "10^4 tuples: " + std::to_string(disagreements) +
             " boundary ties; resub " + fmtg(worst_resub) + ", T0 closure " +
             fmtg(worst_close) + ", round trip " + fmtg(worst_round) +
             ", budget 1e-10; runtime < 5 s",
         sec);
}

// ---- criterion 10: slope fitter ----------------------------------------------

void criterion_slope_fit() {
  Timer timer;
  const double C0 = 2.35;
  ShellSpectrum sp;
  for (int k = 2; k <= 10; ++k) {
    ShellSpectrum::Shell shell;
    shell.k = k;
    shell.count = 1;
    shell.energy = C0 * std::pow(static_cast<double>(k), -5.0 / 3.0);
    sp.shells.push_back(shell);
  }
  const SlopeFit fit = slope_fit(sp, 2, 10);
  const double exp_err = std::abs(fit.exponent + 5.0 / 3.0);
  const double pre_err = std::abs(fit.prefactor - C0) / C0;
  report(10, "slope-fit-synthetic", exp_err < 1e-3 && pre_err < 1e-3,
         "exponent err " + fmtg(exp_err) + ", prefactor rel err " + fmtg(pre_err) +
             ", budget 1e-3",
         timer.seconds());
}

// ---- criterion 11: artifact determinism ----------------------------------------

void criterion_determinism() {
  Timer timer;
  const fs::path dir = fs::temp_directory_path() / "mhds_acceptance_det";
  fs::remove_all(dir);
  std::ostringstream cfg;
  cfg << "schema_version = 1\n[solver]\nn = 16\nnu = 0.05\neta = 0.05\ndt = 0.01\n"
      << "t_end = 0.05\ninit = orszag-tang\n"
      << "[probe]\nk = 4 0 0\ndelta = 1.0\np_grid = 2 4 8\n"
      << "[bounds]\nC0 = 1.0\neps = measured\n"
      << "[verify]\nshell_lo = 2\nshell_hi = 5\n"
      << "[output]\ndirectory = " << dir.string() << "\ncadence = 1\nformats = csv jsonl\n"
      << "checkpoints = endpoints\n";
  const RunConfig config = parse_config(cfg.str());

  const RunArtifacts first = cmd_run(config);
  std::map<std::string, std::string> bytes;
  for (const std::string& f : first.files) {
    std::ifstream in(dir / f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes[f] = ss.str();
  }
  fs::remove_all(dir);
  const RunArtifacts second = cmd_run(config);
  bool identical = first.files == second.files;
  std::string offender;
  for (const std::string& f : second.files) {
    std::ifstream in(dir / f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (bytes.at(f) != ss.str()) {
      identical = false;
      offender = f;
      break;
    }
  }
  fs::remove_all(dir);
  report(11, "artifact-determinism", identical,
         identical ? std::to_string(first.files.size()) + " files byte-identical on re-run"
                   : "mismatch in " + offender,
         timer.seconds());
}

}  // namespace

int main() {
  apply_thread_cap_from_env();
  std::printf("acceptance suite\n================\n");
  Timer total;

  criterion_parseval();
  criterion_leray();
  criterion_rhs_oracle();
  criteria_run_based();  // 4, 6, 7, 8
  criterion_ideal();     // 5
  criterion_bounds_algebra();
  criterion_slope_fit();
  criterion_determinism();

  int failed = 0;
  for (const Criterion& c : g_results)
    if (!c.pass) ++failed;
  std::printf("================\nACCEPTANCE: %zu/11 criteria passed (%.1f s total)\n",
              g_results.size() - failed, total.seconds());
  return failed == 0 ? 0 : 1;
}
