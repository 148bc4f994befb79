#include "mhds/solver.hpp"

#include <cmath>
#include <random>

#include "mhds/fft.hpp"
#include "mhds/kernels.hpp"
#include "mhds/ramp.hpp"

namespace mhds {

namespace {

const double kTwoPi = WavenumberGrid::two_pi();

double mode_norm(const std::array<int, 3>& m) {
  return std::sqrt(static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
                   static_cast<double>(m[2]) * m[2]);
}

// Fixed polarization rule: unit vector orthogonal to the mode.
std::array<double, 3> polarization(const std::array<int, 3>& m) {
  const double x = m[0], y = m[1], z = m[2];
  // z-hat cross xi unless xi is parallel to z-hat, then x-hat cross xi.
  double ex = -y, ey = x, ez = 0.0;
  if (x == 0.0 && y == 0.0) {
    ex = 0.0;
    ey = -z;
    ez = y;
  }
  const double nrm = std::sqrt(ex * ex + ey * ey + ez * ez);
  return {ex / nrm, ey / nrm, ez / nrm};
}

// Nonlinear stage evaluation shared by rhs() and the stepper: advective
// terms, Leray projection, dealiasing and forcing -- no diffusion term.
struct StageEval {
  SpectralField nu;  // nonlinear + forcing term of the velocity equation
  SpectralField nb;
  double max_speed = 0.0;
  double injection = 0.0;  // Re sum(u.conj f1 + b.conj f2)
  double grad_sq = 0.0;    // ||grad u||^2 + ||grad b||^2
};

StageEval eval_stage(const SpectralField& u, const SpectralField& b, double t,
                     const SolverParams& p, bool want_speed, bool check_finite = true) {
  if (check_finite && (!all_finite(u) || !all_finite(b)))
    throw DivergedError("non-finite state at t = " + std::to_string(t));

  const WavenumberGrid& g = u.grid;
  const std::size_t n3 = g.size();

  const PhysicalField U = fft_inverse(u);
  const PhysicalField B = fft_inverse(b);

  StageEval out;
  if (want_speed) {
    out.max_speed = det_max(n3, [&](std::size_t m) {
      const double su = std::sqrt(U.v[0][m] * U.v[0][m] + U.v[1][m] * U.v[1][m] +
                                  U.v[2][m] * U.v[2][m]);
      const double sb = std::sqrt(B.v[0][m] * B.v[0][m] + B.v[1][m] * B.v[1][m] +
                                  B.v[2][m] * B.v[2][m]);
      return su + sb;
    });
  }

  // dU[j], dB[j]: collocation values of the j-derivative of each component.
  PhysicalField dU[3], dB[3];
  for (int j = 0; j < 3; ++j) {
    SpectralField gu(g), gb(g);
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m) {
      const auto f = g.freqs_of(m);
      const Complex ik(0.0, static_cast<double>(f[j]));
      for (int i = 0; i < 3; ++i) {
        gu.c[i][m] = ik * u.c[i][m];
        gb.c[i][m] = ik * b.c[i][m];
      }
    }
    dU[j] = fft_inverse(gu);
    dB[j] = fft_inverse(gb);
  }

  // (b.grad)b - (u.grad)u and (b.grad)u - (u.grad)b, assembled pointwise.
  PhysicalField wu(g), wb(g);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const double ux = U.v[0][m], uy = U.v[1][m], uz = U.v[2][m];
    const double bx = B.v[0][m], by = B.v[1][m], bz = B.v[2][m];
    for (int i = 0; i < 3; ++i) {
      const double ugu = ux * dU[0].v[i][m] + uy * dU[1].v[i][m] + uz * dU[2].v[i][m];
      const double bgb = bx * dB[0].v[i][m] + by * dB[1].v[i][m] + bz * dB[2].v[i][m];
      const double bgu = bx * dU[0].v[i][m] + by * dU[1].v[i][m] + bz * dU[2].v[i][m];
      const double ugb = ux * dB[0].v[i][m] + uy * dB[1].v[i][m] + uz * dB[2].v[i][m];
      wu.v[i][m] = bgb - ugu;
      wb.v[i][m] = bgu - ugb;
    }
  }

  out.nu = fft_forward(wu);
  out.nb = fft_forward(wb);
  project_dealias_zero(out.nu);
  project_dealias_zero(out.nb);

  if (p.forcing.kind != ForcingSpec::Kind::zero) {
    SpectralField f1, f2;
    forcing_eval(p.forcing, g, t, f1, f2);
    out.injection = cross_helicity(u, f1) + cross_helicity(b, f2);
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m)
      for (int i = 0; i < 3; ++i) {
        out.nu.c[i][m] += f1.c[i][m];
        out.nb.c[i][m] += f2.c[i][m];
      }
  }

  out.grad_sq = grad_norm_sq(u) + grad_norm_sq(b);
  return out;
}

}  // namespace

double forcing_ramp(double t, double ramp_time) {
  if (ramp_time <= 0.0) return 1.0;
  return smooth01(t / ramp_time);
}

void forcing_eval(const ForcingSpec& spec, const WavenumberGrid& grid, double t,
                  SpectralField& f1, SpectralField& f2) {
  f1 = SpectralField(grid);
  f2 = SpectralField(grid);
  f1.solenoidal = f2.solenoidal = true;
  if (spec.kind == ForcingSpec::Kind::zero) return;

  const double amp = spec.amplitude * forcing_ramp(t, spec.ramp_time);
  for (const auto& m : spec.mode_set) {
    if (std::abs(m[0]) >= grid.nyquist() || std::abs(m[1]) >= grid.nyquist() ||
        std::abs(m[2]) >= grid.nyquist())
      throw ConfigError("forcing mode (" + std::to_string(m[0]) + "," + std::to_string(m[1]) +
                        "," + std::to_string(m[2]) + ") outside grid n = " +
                        std::to_string(grid.n()));
    if (m[0] == 0 && m[1] == 0 && m[2] == 0)
      throw ConfigError("forcing mode must be nonzero");
    const auto e = polarization(m);
    for (int i = 0; i < 3; ++i) {
      const Complex c(amp * e[i], 0.0);
      f1.at(i, m[0], m[1], m[2]) += c;
      f1.at(i, -m[0], -m[1], -m[2]) += std::conj(c);
      f2.at(i, m[0], m[1], m[2]) += c;
      f2.at(i, -m[0], -m[1], -m[2]) += std::conj(c);
    }
  }
}

void SolverParams::validate() const {
  if (n < 4 || n % 2 != 0)
    throw ConfigError("solver.n must be even and >= 4");
  if (nu < 0.0 || eta < 0.0)
    throw ConfigError("viscosity and resistivity must be nonnegative");
  if (dt <= 0.0) throw ConfigError("solver.dt must be positive");
  if (t_end < 0.0) throw ConfigError("solver.t_end must be nonnegative");
  if (snapshot_cadence < 1) throw ConfigError("snapshot cadence must be >= 1");
  if (forcing.kind != ForcingSpec::Kind::zero) {
    if (forcing.mode_set.empty())
      throw ConfigError("fixed-low-mode forcing needs at least one mode");
    for (const auto& m : forcing.mode_set)
      if (mode_norm(m) > 2.0 || (m[0] == 0 && m[1] == 0 && m[2] == 0))
        throw ConfigError("forcing modes must satisfy 0 < |xi| <= 2");
  }
  if (init.kind == InitSpec::Kind::random_band) {
    if (init.band_lo < 1 || init.band_hi < init.band_lo)
      throw ConfigError("random_band: need 1 <= band_lo <= band_hi");
    if (init.energy <= 0.0) throw ConfigError("random_band: energy must be positive");
  }
}

RhsResult rhs(const MHDState& state, const SolverParams& params) {
  StageEval ev = eval_stage(state.u_hat, state.b_hat, state.t, params, true);
  RhsResult out;
  out.du = std::move(ev.nu);
  out.db = std::move(ev.nb);
  out.max_speed = ev.max_speed;
  const WavenumberGrid& g = state.u_hat.grid;
  const std::size_t n3 = g.size();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = g.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    for (int i = 0; i < 3; ++i) {
      out.du.c[i][m] -= params.nu * k2 * state.u_hat.c[i][m];
      out.db.c[i][m] -= params.eta * k2 * state.b_hat.c[i][m];
    }
  }
  out.du.solenoidal = true;
  out.db.solenoidal = true;
  return out;
}

MHDState initial_state(const SolverParams& params) {
  const WavenumberGrid g(params.n);
  MHDState s;
  s.t = 0.0;
  switch (params.init.kind) {
    case InitSpec::Kind::zero: {
      s.u_hat = SpectralField(g);
      s.b_hat = SpectralField(g);
      s.u_hat.solenoidal = s.b_hat.solenoidal = true;
      return s;
    }
    case InitSpec::Kind::orszag_tang: {
      // Vortex-type low-mode data extended to 3D with a mild z coupling;
      // divergence-free term by term.
      const double sc = 0.5;
      PhysicalField u(g), b(g);
      const int n = g.n();
      const double h = kTwoPi / n;
#pragma omp parallel for schedule(static)
      for (std::size_t m = 0; m < g.size(); ++m) {
        const int iz = static_cast<int>(m % n);
        const int iy = static_cast<int>((m / n) % n);
        const int ix = static_cast<int>(m / (static_cast<std::size_t>(n) * n));
        const double x = ix * h, y = iy * h, z = iz * h;
        u.v[0][m] = -std::sin(y) + sc * std::sin(z);
        u.v[1][m] = std::sin(x) + sc * std::sin(z);
        u.v[2][m] = sc * (std::sin(x) + std::sin(y));
        b.v[0][m] = -std::sin(y) + sc * std::sin(z);
        b.v[1][m] = std::sin(2.0 * x) + sc * std::sin(z);
        b.v[2][m] = sc * (std::sin(2.0 * x) + std::sin(y));
      }
      s.u_hat = leray_project(dealias(fft_forward(u)));
      s.b_hat = leray_project(dealias(fft_forward(b)));
      zero_mean_and_nyquist(s.u_hat);
      zero_mean_and_nyquist(s.b_hat);
      hermitian_symmetrize(s.u_hat);
      hermitian_symmetrize(s.b_hat);
      return s;
    }
    case InitSpec::Kind::random_band: {
      auto build = [&](std::uint64_t seed) {
        SpectralField F(g);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int kmax = g.dealias_bound();
        // Signed-lexicographic traversal keeps the draw order fixed.
        for (int fx = -g.n() / 2 + 1; fx <= g.n() / 2; ++fx)
          for (int fy = -g.n() / 2 + 1; fy <= g.n() / 2; ++fy)
            for (int fz = -g.n() / 2 + 1; fz <= g.n() / 2; ++fz) {
              const bool canonical =
                  fx > 0 || (fx == 0 && (fy > 0 || (fy == 0 && fz > 0)));
              if (!canonical) continue;
              if (std::abs(fx) > kmax || std::abs(fy) > kmax || std::abs(fz) > kmax)
                continue;
              const double kn = std::sqrt(static_cast<double>(fx) * fx +
                                          static_cast<double>(fy) * fy +
                                          static_cast<double>(fz) * fz);
              const int shell = static_cast<int>(std::floor(kn + 0.5));
              if (shell < params.init.band_lo || shell > params.init.band_hi) continue;
              Complex z[3];
              for (int i = 0; i < 3; ++i) z[i] = Complex(normal(rng), normal(rng));
              // Remove the component along the mode.
              const double k2 = kn * kn;
              const Complex zdotk = z[0] * static_cast<double>(fx) +
                                    z[1] * static_cast<double>(fy) +
                                    z[2] * static_cast<double>(fz);
              const double fv[3] = {static_cast<double>(fx), static_cast<double>(fy),
                                    static_cast<double>(fz)};
              for (int i = 0; i < 3; ++i) z[i] -= zdotk * fv[i] / k2;
              for (int i = 0; i < 3; ++i) {
                F.at(i, fx, fy, fz) = z[i];
                F.at(i, -fx, -fy, -fz) = std::conj(z[i]);
              }
            }
        // Normalize each occupied shell to A k^-slope with total energy as asked.
        const int lo = params.init.band_lo, hi = params.init.band_hi;
        std::vector<double> shell_sum(static_cast<std::size_t>(hi) + 1, 0.0);
        for (std::size_t m = 0; m < g.size(); ++m) {
          const auto f = g.freqs_of(m);
          const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                      static_cast<double>(f[1]) * f[1] +
                                      static_cast<double>(f[2]) * f[2]);
          const int shell = static_cast<int>(std::floor(kn + 0.5));
          if (shell < lo || shell > hi) continue;
          for (int i = 0; i < 3; ++i) shell_sum[shell] += std::norm(F.c[i][m]);
        }
        double denom = 0.0;
        for (int k = lo; k <= hi; ++k)
          if (shell_sum[k] > 0.0) denom += std::pow(k, -params.init.slope);
        const double amp = params.init.energy / denom;
        std::vector<double> factor(static_cast<std::size_t>(hi) + 1, 0.0);
        for (int k = lo; k <= hi; ++k)
          if (shell_sum[k] > 0.0)
            factor[k] = std::sqrt(amp * std::pow(k, -params.init.slope) / shell_sum[k]);
        for (std::size_t m = 0; m < g.size(); ++m) {
          const auto f = g.freqs_of(m);
          const double kn = std::sqrt(static_cast<double>(f[0]) * f[0] +
                                      static_cast<double>(f[1]) * f[1] +
                                      static_cast<double>(f[2]) * f[2]);
          const int shell = static_cast<int>(std::floor(kn + 0.5));
          const double fac = (shell >= lo && shell <= hi) ? factor[shell] : 0.0;
          for (int i = 0; i < 3; ++i) F.c[i][m] *= fac;
        }
        F.solenoidal = true;
        return F;
      };
      s.u_hat = build(params.init.seed);
      s.b_hat = build(params.init.seed ^ 0x9e3779b97f4a7c15ULL);
      return s;
    }
    case InitSpec::Kind::file:
      throw ConfigError("file initial data must be resolved by the caller");
  }
  throw ConfigError("unknown initial condition kind");
}

Integrator::Integrator(const SolverParams& params)
    : Integrator(params, initial_state(params)) {}

Integrator::Integrator(const SolverParams& params, MHDState initial)
    : params_(params), state_(std::move(initial)) {
  params_.validate();
  if (state_.u_hat.grid.n() != params_.n)
    throw ConfigError("initial state grid does not match solver.n");
  init_tables();
  energy0_ = parseval_energy(state_.u_hat) + parseval_energy(state_.b_hat);
}

void Integrator::init_tables() {
  const WavenumberGrid g(params_.n);
  const std::size_t n3 = g.size();
  half_u_.resize(n3);
  full_u_.resize(n3);
  half_b_.resize(n3);
  full_b_.resize(n3);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const auto f = g.freqs_of(m);
    const double k2 = static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1] +
                      static_cast<double>(f[2]) * f[2];
    half_u_[m] = std::exp(-params_.nu * k2 * params_.dt * 0.5);
    full_u_[m] = std::exp(-params_.nu * k2 * params_.dt);
    half_b_[m] = std::exp(-params_.eta * k2 * params_.dt * 0.5);
    full_b_[m] = std::exp(-params_.eta * k2 * params_.dt);
  }
}

void Integrator::advance() {
  const WavenumberGrid& g = state_.u_hat.grid;
  const std::size_t n3 = g.size();
  const double dt = params_.dt;
  const double t = state_.t;

  // out[m] = fac[m] * (a[m] + s * k[m]) per component; fac == null means 1.
  auto combine = [&](const SpectralField& a, double s, const SpectralField& k,
                     const std::vector<double>* fac) {
    SpectralField out(g);
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m) {
      const double f = fac ? (*fac)[m] : 1.0;
      for (int i = 0; i < 3; ++i) out.c[i][m] = f * (a.c[i][m] + s * k.c[i][m]);
    }
    out.solenoidal = a.solenoidal && k.solenoidal;
    return out;
  };

  StageEval s1 = eval_stage(state_.u_hat, state_.b_hat, t, params_, params_.cfl_check);
  if (params_.cfl_check && s1.max_speed > 0.0) {
    const double limit = 0.5 * (kTwoPi / params_.n) / s1.max_speed;
    if (dt > limit)
      throw CflError("dt = " + std::to_string(dt) + " exceeds the advective limit " +
                     std::to_string(limit) + " at t = " + std::to_string(t));
  }

  SpectralField u2 = combine(state_.u_hat, 0.5 * dt, s1.nu, &half_u_);
  SpectralField b2 = combine(state_.b_hat, 0.5 * dt, s1.nb, &half_b_);
  StageEval s2 = eval_stage(u2, b2, t + 0.5 * dt, params_, false, false);

  SpectralField u3 = combine(state_.u_hat, 0.0, s1.nu, &half_u_);
  SpectralField b3 = combine(state_.b_hat, 0.0, s1.nb, &half_b_);
  {
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m)
      for (int i = 0; i < 3; ++i) {
        u3.c[i][m] += 0.5 * dt * s2.nu.c[i][m];
        b3.c[i][m] += 0.5 * dt * s2.nb.c[i][m];
      }
  }
  StageEval s3 = eval_stage(u3, b3, t + 0.5 * dt, params_, false, false);

  SpectralField u4 = combine(state_.u_hat, 0.0, s1.nu, &full_u_);
  SpectralField b4 = combine(state_.b_hat, 0.0, s1.nb, &full_b_);
  {
#pragma omp parallel for schedule(static)
    for (std::size_t m = 0; m < n3; ++m)
      for (int i = 0; i < 3; ++i) {
        u4.c[i][m] += dt * half_u_[m] * s3.nu.c[i][m];
        b4.c[i][m] += dt * half_b_[m] * s3.nb.c[i][m];
      }
  }
  StageEval s4 = eval_stage(u4, b4, t + dt, params_, false, false);

  SpectralField un(g), bn(g);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n3; ++m) {
    const double eu1 = half_u_[m], eu2 = full_u_[m];
    const double eb1 = half_b_[m], eb2 = full_b_[m];
    for (int i = 0; i < 3; ++i) {
      un.c[i][m] = eu2 * state_.u_hat.c[i][m] +
                   (dt / 6.0) * (eu2 * s1.nu.c[i][m] +
                                 2.0 * eu1 * (s2.nu.c[i][m] + s3.nu.c[i][m]) +
                                 s4.nu.c[i][m]);
      bn.c[i][m] = eb2 * state_.b_hat.c[i][m] +
                   (dt / 6.0) * (eb2 * s1.nb.c[i][m] +
                                 2.0 * eb1 * (s2.nb.c[i][m] + s3.nb.c[i][m]) +
                                 s4.nb.c[i][m]);
    }
  }

  project_dealias_zero(un);
  project_dealias_zero(bn);
  state_.u_hat = std::move(un);
  state_.b_hat = std::move(bn);

  const double minv = params_.min_visc();
  diss_integral_ += (dt / 6.0) * minv *
                    (s1.grad_sq + 2.0 * s2.grad_sq + 2.0 * s3.grad_sq + s4.grad_sq);
  inj_integral_ += (dt / 6.0) *
                   (s1.injection + 2.0 * s2.injection + 2.0 * s3.injection + s4.injection);
  state_.t = t + dt;

  const double e = parseval_energy(state_.u_hat) + parseval_energy(state_.b_hat);
  if (!std::isfinite(e))
    throw DivergedError("energy diverged at t = " + std::to_string(state_.t));
}

EnergyRecord Integrator::record() const {
  EnergyRecord r;
  r.t = state_.t;
  r.kinetic = parseval_energy(state_.u_hat);
  r.magnetic = parseval_energy(state_.b_hat);
  r.dissipated = diss_integral_;
  r.injected = inj_integral_;
  r.residual = 0.5 * (r.kinetic + r.magnetic) + r.dissipated - r.injected - 0.5 * energy0_;
  return r;
}

MHDState step(const MHDState& state, const SolverParams& params) {
  Integrator integ(params, state);
  integ.advance();
  return integ.state();
}

long run_step_count(const SolverParams& params) {
  const long n = std::lround(params.t_end / params.dt);
  return n < 0 ? 0 : n;
}

void run(const SolverParams& params, const RunObserver& observer,
         std::optional<MHDState> initial) {
  params.validate();
  Integrator integ = initial.has_value() ? Integrator(params, std::move(*initial))
                                         : Integrator(params);
  observer(integ.state(), integ.record());
  const long nsteps = run_step_count(params);
  for (long s = 1; s <= nsteps; ++s) {
    integ.advance();
    if (s % params.snapshot_cadence == 0 || s == nsteps)
      observer(integ.state(), integ.record());
  }
}

Trajectory run(const SolverParams& params, std::optional<MHDState> initial) {
  Trajectory traj;
  run(
      params,
      [&](const MHDState& s, const EnergyRecord& r) {
        traj.snapshots.push_back(s);
        traj.records.push_back(r);
      },
      std::move(initial));
  return traj;
}

std::vector<EnergyRecord> energy_ledger(const Trajectory& traj) {
  if (traj.records.empty()) throw ConfigError("energy_ledger: empty trajectory");
  std::vector<EnergyRecord> out = traj.records;
  const double e0 = out.front().kinetic + out.front().magnetic;
  for (EnergyRecord& r : out)
    r.residual = 0.5 * (r.kinetic + r.magnetic) + r.dissipated - r.injected - 0.5 * e0;
  return out;
}

}  // namespace mhds
