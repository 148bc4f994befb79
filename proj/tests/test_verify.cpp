#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhds/verify.hpp"

using namespace mhds;

namespace {

SolverParams small_decaying() {
  SolverParams p;
  p.n = 16;
  p.nu = 0.05;
  p.eta = 0.05;
  p.dt = 0.01;
  p.t_end = 0.3;
  p.snapshot_cadence = 5;
  p.init.kind = InitSpec::Kind::orszag_tang;
  return p;
}

ProbeSpec probe4() {
  ProbeSpec ps;
  ps.k = {4, 0, 0};
  ps.delta = 1.0;
  return ps;
}

}  // namespace

TEST_CASE("zero run passes all checks trivially with an explicit cap") {
  SolverParams p = small_decaying();
  p.init.kind = InitSpec::Kind::zero;
  p.t_end = 0.05;
  const std::vector<ProbeSpec> probes = {probe4()};
  const RunCheckData data = collect_run_data(p, probes);
  const std::vector<double> R1(data.times.size(), 1.0);
  const CheckReport contained = check_e2_containment(data, data.probes[0], R1);
  CHECK(contained.verdict == Verdict::pass);
  CHECK(contained.worst_margin == doctest::Approx(0.25));  // R1/|k| - 0
  const CheckReport sup_contained = check_sup_ep_containment(data, data.probes[0], R1);
  CHECK(sup_contained.verdict == Verdict::pass);
  const CheckReport integral = check_ep_time_integral(data, data.probes[0], R1, 1.0);
  CHECK(integral.verdict == Verdict::pass);
}

TEST_CASE("decaying run passes the containment checks with auto-selected caps") {
  VerifySetup setup;
  setup.params = small_decaying();
  setup.probes = {probe4()};
  setup.shell_lo = 2;
  setup.shell_hi = 5;
  const VerifyOutcome out = run_all_checks(setup);
  CHECK(!out.any_failure);
  REQUIRE(out.reports.size() == 5);  // three probe checks + two shell checks
  for (const CheckReport& r : out.reports) {
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.worst_margin > 0.0);
  }
  CHECK(out.eps_mean > 0.0);
  CHECK(out.F_inf == 0.0);
  CHECK(out.R_sq_T == doctest::Approx(out.reports[0].samples[0].rhs * 0.0 +
                                      out.R_sq_T));  // defined
}

TEST_CASE("halved R1 violates the hypothesis and gates the verdict") {
  SolverParams p = small_decaying();
  const std::vector<ProbeSpec> probes = {probe4()};
  const RunCheckData data = collect_run_data(p, probes);
  const auto R_sq = data.R_sq_series();
  std::vector<std::vector<double>> hp(data.times.size(),
                                      std::vector<double>(probes[0].p_grid.size(), 0.0));
  const auto R1 =
      select_R1(R_sq, hp, probes[0].delta, probes[0].p_grid, p.nu, p.eta, 1.1);
  std::vector<double> halved = R1;
  for (double& v : halved) v *= 0.5;
  const CheckReport gated = check_e2_containment(data, data.probes[0], halved);
  CHECK(gated.verdict == Verdict::hypothesis_unmet);
  CHECK(gated.samples.empty());
  CHECK(gated.note.find("hypothesis") != std::string::npos);
  // The properly selected cap passes.
  const CheckReport ok = check_e2_containment(data, data.probes[0], R1);
  CHECK(ok.verdict == Verdict::pass);
}

TEST_CASE("p-grid refinement never flips a comfortable pass") {
  SolverParams p = small_decaying();
  ProbeSpec coarse = probe4();
  ProbeSpec fine = probe4();
  fine.p_grid.push_back(64.0);
  const std::vector<ProbeSpec> probes = {coarse, fine};
  const RunCheckData data = collect_run_data(p, probes);
  const auto R_sq = data.R_sq_series();
  auto select = [&](const ProbeSeries& probe) {
    std::vector<std::vector<double>> hp(data.times.size());
    std::vector<double> hinf(data.times.size(), 0.0);
    for (std::size_t j = 0; j < data.times.size(); ++j) {
      hp[j] = probe.h_rows[j];
      hp[j].pop_back();
      hinf[j] = probe.h_rows[j].back();
    }
    return select_R1(R_sq, hp, probe.spec.delta, probe.spec.p_grid, p.nu, p.eta, 1.1, hinf);
  };
  const CheckReport a = check_sup_ep_containment(data, data.probes[0], select(data.probes[0]));
  const CheckReport b = check_sup_ep_containment(data, data.probes[1], select(data.probes[1]));
  REQUIRE(a.verdict == Verdict::pass);
  REQUIRE(a.worst_margin > 1e-6);
  CHECK(b.verdict == Verdict::pass);
}

TEST_CASE("forced run passes with time-dependent caps") {
  VerifySetup setup;
  setup.params = small_decaying();
  setup.params.forcing.kind = ForcingSpec::Kind::fixed_low_mode;
  setup.params.forcing.amplitude = 0.3;
  setup.params.forcing.mode_set = {{0, 1, 0}};
  setup.params.forcing.ramp_time = 0.05;
  setup.probes = {probe4()};
  setup.shell_lo = 2;
  setup.shell_hi = 5;
  const VerifyOutcome out = run_all_checks(setup);
  CHECK(!out.any_failure);
  CHECK(out.F_inf > 0.0);
  for (const CheckReport& r : out.reports) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("ideal invariants check") {
  SUBCASE("applies only to ideal runs") {
    const RunCheckData data = collect_run_data(small_decaying(), {});
    const CheckReport gated = check_ideal_invariants(data);
    CHECK(gated.verdict == Verdict::hypothesis_unmet);
  }
  SUBCASE("passes on an ideal run and appears in the orchestration") {
    VerifySetup setup;
    setup.params = small_decaying();
    setup.params.nu = 0.0;
    setup.params.eta = 0.0;
    setup.params.dt = 0.005;
    setup.params.t_end = 0.1;
    setup.shell_lo = 2;
    setup.shell_hi = 4;
    const VerifyOutcome out = run_all_checks(setup);
    bool found = false;
    for (const CheckReport& r : out.reports)
      if (r.name == "ideal-quadratic-invariants") {
        found = true;
        CHECK(r.verdict == Verdict::pass);
      }
    CHECK(found);
  }
  SUBCASE("halving dt shrinks the drift at fourth order") {
    auto drift_at = [&](double dt) {
      SolverParams p = small_decaying();
      p.nu = 0.0;
      p.eta = 0.0;
      p.dt = dt;
      p.t_end = 0.16;
      p.snapshot_cadence = 1000000;
      const RunCheckData data = collect_run_data(p, {});
      const double e0 = data.records.front().kinetic + data.records.front().magnetic;
      const double e1 = data.records.back().kinetic + data.records.back().magnetic;
      return std::abs(e1 - e0) / e0;
    };
    const double d1 = drift_at(0.016);
    const double d2 = drift_at(0.008);
    CHECK(d1 / d2 > 8.0);
    CHECK(d1 / d2 < 40.0);
  }
}

TEST_CASE("time-integral cap scaling: doubling |k| divides the cap by 16") {
  SolverParams p = small_decaying();
  p.n = 32;  // the |k| = 8 probe support needs the wider lattice
  p.t_end = 0.05;
  ProbeSpec p4 = probe4();
  ProbeSpec p8;
  p8.k = {8, 0, 0};
  p8.delta = 1.0;
  const RunCheckData data = collect_run_data(p, std::vector<ProbeSpec>{p4, p8});
  const std::vector<double> R1(data.times.size(), 100.0);
  const CheckReport a = check_ep_time_integral(data, data.probes[0], R1, 3.0);
  const CheckReport b = check_ep_time_integral(data, data.probes[1], R1, 3.0);
  REQUIRE(a.verdict == Verdict::pass);
  REQUIRE(b.verdict == Verdict::pass);
  CHECK(a.samples[0].rhs == doctest::Approx(16.0 * b.samples[0].rhs).epsilon(1e-12));
}
