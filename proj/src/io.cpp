#include "mhds/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mhds {

namespace {

using json = nlohmann::ordered_json;

constexpr char kMagic[5] = {'M', 'H', 'D', 'S', '1'};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i64(std::ofstream& out, std::int64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
double get_f64(std::ifstream& in) {
  double v = 0.0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
std::int64_t get_i64(std::ifstream& in) {
  std::int64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

json sample_json(const CheckSample& s) {
  return json{{"t", s.t}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"margin", s.margin}};
}

}  // namespace

void checkpoint_write(const std::string& path, const MHDState& state, double nu, double eta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint '" + path + "'");
  out.write(kMagic, sizeof kMagic);
  const int n = state.u_hat.grid.n();
  put_i64(out, n);
  put_f64(out, state.t);
  put_f64(out, nu);
  put_f64(out, eta);
  for (const SpectralField* field : {&state.u_hat, &state.b_hat})
    for (int fx = -n / 2 + 1; fx <= n / 2; ++fx)
      for (int fy = -n / 2 + 1; fy <= n / 2; ++fy)
        for (int fz = -n / 2 + 1; fz <= n / 2; ++fz)
          for (int comp = 0; comp < 3; ++comp) {
            const Complex z = field->at(comp, fx, fy, fz);
            put_f64(out, z.real());
            put_f64(out, z.imag());
          }
  if (!out) throw IoError("short write on checkpoint '" + path + "'");
}

Checkpoint checkpoint_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint '" + path + "'");
  char magic[5];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError("'" + path + "' is not a MHDS1 checkpoint");
  const std::int64_t n = get_i64(in);
  if (n < 4 || n > 4096 || n % 2 != 0)
    throw IoError("checkpoint grid size " + std::to_string(n) + " is not sensible");
  Checkpoint ck;
  const WavenumberGrid grid(static_cast<int>(n));
  ck.state.t = get_f64(in);
  ck.nu = get_f64(in);
  ck.eta = get_f64(in);
  ck.state.u_hat = SpectralField(grid);
  ck.state.b_hat = SpectralField(grid);
  for (SpectralField* field : {&ck.state.u_hat, &ck.state.b_hat})
    for (int fx = -static_cast<int>(n) / 2 + 1; fx <= n / 2; ++fx)
      for (int fy = -static_cast<int>(n) / 2 + 1; fy <= n / 2; ++fy)
        for (int fz = -static_cast<int>(n) / 2 + 1; fz <= n / 2; ++fz)
          for (int comp = 0; comp < 3; ++comp) {
            const double re = get_f64(in);
            const double im = get_f64(in);
            field->at(comp, fx, fy, fz) = Complex(re, im);
          }
  if (!in) throw IoError("checkpoint '" + path + "' truncated");
  ck.state.u_hat.solenoidal = ck.state.b_hat.solenoidal = true;
  return ck;
}

BoundsReportData cmd_bounds(BoundInputs inputs, const std::string& eps_source) {
  if (inputs.R1_at_0 <= 0.0) inputs.R1_at_0 = inputs.R1;
  if (inputs.R2 <= 0.0) {
    inputs.R3 = compute_R3(inputs.R_sq, inputs.F_inf, inputs.nu, inputs.eta);
    inputs.R2 = compute_R2(inputs.R1_at_0, inputs.R3);
  }
  BoundsReportData report;
  report.inputs = inputs;
  report.eps_source = eps_source;
  const InertialRange range = inertial_bounds(inputs.C0, inputs.eps, inputs.nu, inputs.eta,
                                              inputs.R1, inputs.R2, inputs.T);
  report.k1 = range.k1;
  report.k2 = range.k2;
  const ConditionResult cond = k41_condition(inputs.C0, inputs.eps, inputs.nu, inputs.eta,
                                             inputs.R1, inputs.R2, inputs.T);
  report.condition53 = cond.satisfied;
  report.margin53 = cond.margin;
  report.T0 = max_time_T0(inputs.C0, inputs.eps, inputs.nu, inputs.eta, inputs.R1, inputs.R2);
  report.eps_min = min_dissipation(report.T0, inputs.nu, inputs.eta, inputs.C0, inputs.R1,
                                   inputs.R2);
  return report;
}

std::string bounds_report_json(const BoundsReportData& r) {
  json j;
  j["schema_version"] = 1;
  j["k1"] = r.k1;
  j["k2"] = r.k2;
  j["condition53"] = r.condition53;
  j["margin53"] = r.margin53;
  j["T0"] = r.T0;
  j["eps_min"] = r.eps_min;
  j["inputs"] = json{{"C0", r.inputs.C0},
                     {"eps", r.inputs.eps},
                     {"eps_source", r.eps_source},
                     {"nu", r.inputs.nu},
                     {"eta", r.inputs.eta},
                     {"T", r.inputs.T},
                     {"R_sq", r.inputs.R_sq},
                     {"R1", r.inputs.R1},
                     {"R1_at_0", r.inputs.R1_at_0},
                     {"R2", r.inputs.R2},
                     {"R3", r.inputs.R3},
                     {"F_inf", r.inputs.F_inf}};
  // Sampled admissible-region boundary and the Kolmogorov curve for plots.
  const double lo = r.k1 / 4.0, hi = r.k2 * 4.0;
  if (hi > lo) {
    const auto rows =
        region_S_boundary(r.inputs.R1, r.inputs.R2, r.inputs.nu, r.inputs.eta, r.inputs.T,
                          lo, hi, 64);
    json region = json::array();
    json ek = json::array();
    for (const auto& row : rows) {
      region.push_back(json::array({row[0], row[1], row[2]}));
      ek.push_back(json::array({row[0], kolmogorov_curve(r.inputs.C0, r.inputs.eps, row[0])}));
    }
    j["region_boundary"] = std::move(region);
    j["ek_curve"] = std::move(ek);
  }
  return j.dump(2) + "\n";
}

std::string checks_json(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const CheckReport& r : reports) {
    json item;
    item["name"] = r.name;
    item["probe"] = r.probe;
    item["verdict"] = to_string(r.verdict);
    item["worst_margin"] = r.worst_margin;
    item["tolerance"] = r.tolerance;
    item["note"] = r.note;
    json samples = json::array();
    for (const CheckSample& s : r.samples) samples.push_back(sample_json(s));
    item["samples"] = std::move(samples);
    arr.push_back(std::move(item));
  }
  json j;
  j["schema_version"] = 1;
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

RunArtifacts cmd_run(const RunConfig& config) {
  RunArtifacts artifacts;
  const std::filesystem::path dir(config.output.directory);
  std::filesystem::create_directories(dir);
  artifacts.directory = dir;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    artifacts.files.push_back(name);
  };

  std::optional<MHDState> initial;
  if (config.solver.init.kind == InitSpec::Kind::file)
    initial = checkpoint_read(config.solver.init.path).state;

  // Stream the run; keep the last state for the endpoint checkpoint.
  MHDState last;
  bool wrote_initial = false;
  long observed = 0;
  const bool want_all = config.output.checkpoints == OutputConfig::Checkpoints::all;
  const bool want_endpoints =
      config.output.checkpoints != OutputConfig::Checkpoints::none;
  RunObserver sink = [&](const MHDState& s, const EnergyRecord&) {
    ++observed;
    last = s;
    if (want_all) {
      char name[48];
      std::snprintf(name, sizeof name, "state_%08ld.ckpt",
                    std::lround(s.t / config.solver.dt));
      checkpoint_write((dir / name).string(), s, config.solver.nu, config.solver.eta);
      artifacts.files.push_back(name);
    } else if (want_endpoints && !wrote_initial) {
      checkpoint_write((dir / "state_initial.ckpt").string(), s, config.solver.nu,
                       config.solver.eta);
      artifacts.files.push_back("state_initial.ckpt");
      wrote_initial = true;
    }
  };

  const RunCheckData data =
      collect_run_data(config.solver, config.probes, std::move(initial), sink);
  if (want_endpoints && !want_all) {
    checkpoint_write((dir / "state_final.ckpt").string(), last, config.solver.nu,
                     config.solver.eta);
    artifacts.files.push_back("state_final.ckpt");
  }

  {
    json manifest;
    manifest["schema_version"] = 1;
    manifest["kind"] = "mhd-spectra-run";
    manifest["config"] = serialize_config(config);
    emit("manifest.json", manifest.dump(2) + "\n");
  }

  {
    std::ostringstream os;
    os << "t,kinetic,magnetic,dissipated,injected,residual\n";
    for (const EnergyRecord& r : data.records)
      os << fmt(r.t) << "," << fmt(r.kinetic) << "," << fmt(r.magnetic) << ","
         << fmt(r.dissipated) << "," << fmt(r.injected) << "," << fmt(r.residual) << "\n";
    emit("ledger.csv", os.str());
  }

  {
    std::ostringstream os;
    os << "t,k,E,count\n";
    for (const ShellSpectrum& sp : data.spectra)
      for (const auto& shell : sp.shells)
        os << fmt(sp.t) << "," << shell.k << "," << fmt(shell.energy) << "," << shell.count
           << "\n";
    emit("spectra.csv", os.str());
  }

  // Diagnostics rows (t, k, p, e_p, h_p, E, eps), one per snapshot x probe x p.
  const std::size_t n_user = config.probes.size();
  auto row_values = [&](std::size_t j, std::size_t i, std::size_t ip) {
    const ProbeSeries& probe = data.probes[i];
    const double kn = probe.spec.norm();
    const int shell = static_cast<int>(std::floor(kn + 0.5));
    const auto& shells = data.spectra[j].shells;
    const double E = (shell >= 1 && shell <= static_cast<int>(shells.size()))
                         ? shells[static_cast<std::size_t>(shell - 1)].energy
                         : 0.0;
    return std::array<double, 4>{probe.e_rows[j][ip], probe.h_rows[j][ip], E,
                                 data.dissipation_series[j]};
  };
  if (config.output.csv) {
    std::ostringstream os;
    os << "t,k,p,e_p,h_p,E,eps\n";
    for (std::size_t j = 0; j < data.times.size(); ++j)
      for (std::size_t i = 0; i < n_user; ++i) {
        const ProbeSeries& probe = data.probes[i];
        for (std::size_t ip = 0; ip <= probe.spec.p_grid.size(); ++ip) {
          const bool inf = ip == probe.spec.p_grid.size();
          const auto v = row_values(j, i, ip);
          os << fmt(data.times[j]) << "," << fmt(probe.spec.norm()) << ","
             << (inf ? std::string("inf") : fmt(probe.spec.p_grid[ip])) << "," << fmt(v[0])
             << "," << fmt(v[1]) << "," << fmt(v[2]) << "," << fmt(v[3]) << "\n";
        }
      }
    emit("diagnostics.csv", os.str());
  }
  if (config.output.jsonl) {
    std::ostringstream os;
    for (std::size_t j = 0; j < data.times.size(); ++j)
      for (std::size_t i = 0; i < n_user; ++i) {
        const ProbeSeries& probe = data.probes[i];
        for (std::size_t ip = 0; ip <= probe.spec.p_grid.size(); ++ip) {
          const bool inf = ip == probe.spec.p_grid.size();
          const auto v = row_values(j, i, ip);
          json row;
          row["t"] = data.times[j];
          row["k"] = probe.spec.norm();
          if (inf)
            row["p"] = "inf";
          else
            row["p"] = probe.spec.p_grid[ip];
          row["e_p"] = v[0];
          row["h_p"] = v[1];
          row["E"] = v[2];
          row["eps"] = v[3];
          os << row.dump() << "\n";
        }
      }
    emit("diagnostics.jsonl", os.str());
  }

  // Closed-form bound report, when C0 is configured and the run admits one.
  if (config.bounds.C0.has_value() && !config.probes.empty() &&
      config.solver.min_visc() > 0.0 && data.total_time() > 0.0) {
    double R1_T = 0.0, R1_0 = 0.0;
    for (std::size_t i = 0; i < n_user; ++i) {
      const auto R1 = select_R1_for_probe(data, data.probes[i], config.bounds.margin);
      R1_T = std::max(R1_T, R1.back());
      R1_0 = std::max(R1_0, R1.front());
    }
    const double eps = config.bounds.eps_measured ? data.eps_mean : config.bounds.eps_value;
    if (eps > 0.0 && R1_T > 0.0) {
      BoundInputs inputs;
      inputs.nu = config.solver.nu;
      inputs.eta = config.solver.eta;
      inputs.C0 = *config.bounds.C0;
      inputs.eps = eps;
      inputs.T = data.total_time();
      inputs.R_sq = data.R_sq_series().back();
      inputs.R1 = R1_T;
      inputs.R1_at_0 = R1_0;
      inputs.F_inf = probe_F_inf(data);
      const BoundsReportData report =
          cmd_bounds(inputs, config.bounds.eps_measured ? "measured" : "configured");
      emit("bounds.json", bounds_report_json(report));
    }
  }

  return artifacts;
}

VerifyArtifacts cmd_verify(const std::string& run_dir, const std::string& json_out) {
  const std::filesystem::path dir(run_dir);
  const json manifest = json::parse(read_text(dir / "manifest.json"));
  if (!manifest.contains("config"))
    throw IoError("manifest in '" + run_dir + "' has no config echo");
  const RunConfig config = parse_config(manifest["config"].get<std::string>());

  std::optional<MHDState> initial;
  if (config.solver.init.kind == InitSpec::Kind::file)
    initial = checkpoint_read(config.solver.init.path).state;

  VerifySetup setup;
  setup.params = config.solver;
  setup.probes = config.probes;
  setup.margin = config.bounds.margin;
  setup.shell_lo = config.shell_lo;
  setup.shell_hi = config.shell_hi;

  VerifyArtifacts out;
  out.outcome = run_all_checks(setup, std::move(initial));
  out.checks_path = json_out.empty() ? (dir / "checks.json") : std::filesystem::path(json_out);
  write_text(out.checks_path, checks_json(out.outcome.reports));
  return out;
}

std::string cmd_spectrum(const std::string& run_dir) {
  return read_text(std::filesystem::path(run_dir) / "spectra.csv");
}

}  // namespace mhds
