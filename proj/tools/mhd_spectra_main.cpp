#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "mhds/io.hpp"
#include "mhds/threading.hpp"

namespace {

int do_run(const std::string& config_path, const std::vector<std::string>& overrides,
           const std::string& output_override) {
  mhds::RunConfig config = mhds::parse_config_file(config_path);
  for (const std::string& assignment : overrides) mhds::apply_override(config, assignment);
  if (!output_override.empty()) config.output.directory = output_override;
  const mhds::RunArtifacts artifacts = mhds::cmd_run(config);
  std::printf("run complete: %zu files in %s\n", artifacts.files.size(),
              artifacts.directory.string().c_str());
  for (const std::string& f : artifacts.files) std::printf("  %s\n", f.c_str());
  return 0;
}

int do_bounds(mhds::BoundInputs inputs, bool proof_variant, double delta, double p,
              double F_p, const std::string& eps_source, const std::string& json_out) {
  if (proof_variant) {
    inputs.R3 = mhds::compute_R3_proof_variant(inputs.R_sq, F_p, delta, p);
    inputs.R2 = mhds::compute_R2(inputs.R1_at_0 > 0 ? inputs.R1_at_0 : inputs.R1, inputs.R3);
  }
  const mhds::BoundsReportData report = mhds::cmd_bounds(inputs, eps_source);
  const std::string text = mhds::bounds_report_json(report);
  if (json_out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw mhds::IoError("cannot write '" + json_out + "'");
    out << text;
    std::printf("k1 = %.12g  k2 = %.12g  condition53 = %s  T0 = %.12g  eps_min = %.12g\n",
                report.k1, report.k2, report.condition53 ? "true" : "false", report.T0,
                report.eps_min);
  }
  return 0;
}

int do_verify(const std::string& run_dir, const std::string& json_out) {
  const mhds::VerifyArtifacts result = mhds::cmd_verify(run_dir, json_out);
  int unmet = 0, failed = 0;
  for (const mhds::CheckReport& r : result.outcome.reports) {
    std::printf("%-32s %-28s %-17s worst margin %.6g\n", r.name.c_str(), r.probe.c_str(),
                mhds::to_string(r.verdict), r.worst_margin);
    if (r.verdict == mhds::Verdict::fail) ++failed;
    if (r.verdict == mhds::Verdict::hypothesis_unmet) ++unmet;
  }
  std::printf("checks written to %s (%d failed, %d hypothesis-unmet)\n",
              result.checks_path.string().c_str(), failed, unmet);
  return result.outcome.any_failure ? 1 : 0;
}

int do_spectrum(const std::string& run_dir, const std::string& out_path) {
  const std::string csv = mhds::cmd_spectrum(run_dir);
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mhds::IoError("cannot write '" + out_path + "'");
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  mhds::apply_thread_cap_from_env();

  CLI::App app{"pseudo-spectral MHD simulation with spectral-range bound reports"};
  app.require_subcommand(1);

  std::string config_path, output_override, run_dir, json_out, out_path;
  std::vector<std::string> overrides;

  CLI::App* run_cmd = app.add_subcommand("run", "integrate a configured run, write artifacts");
  run_cmd->add_option("-c,--config", config_path, "configuration file")->required();
  run_cmd->add_option("--set", overrides, "override section.key=value (repeatable)");
  run_cmd->add_option("-o,--output", output_override, "output directory override");

  mhds::BoundInputs inputs;
  bool proof_variant = false;
  double delta = 1.0, p_for_variant = 2.0, F_p = 0.0;
  std::string eps_source = "configured";
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "closed-form inertial-range bounds, no simulation");
  bounds_cmd->add_option("--nu", inputs.nu, "viscosity")->required();
  bounds_cmd->add_option("--eta", inputs.eta, "resistivity")->required();
  bounds_cmd->add_option("--C0", inputs.C0, "spectral constant (no default)")->required();
  bounds_cmd->add_option("--eps", inputs.eps, "dissipation rate")->required();
  bounds_cmd->add_option("--T", inputs.T, "horizon")->required();
  bounds_cmd->add_option("--R1", inputs.R1, "R1 at T")->required();
  bounds_cmd->add_option("--R1-0", inputs.R1_at_0, "R1 at 0 (defaults to R1)");
  bounds_cmd->add_option("--R2", inputs.R2, "R2 at T (derived from --R-sq/--F-inf if absent)");
  bounds_cmd->add_option("--R-sq", inputs.R_sq, "energy bound R^2(T)");
  bounds_cmd->add_option("--F-inf", inputs.F_inf, "forcing sup-norm integral");
  bounds_cmd->add_flag("--r3-proof-variant", proof_variant,
                       "derive R3 via the quadratic-route constants");
  bounds_cmd->add_option("--delta", delta, "cutoff width (proof-variant route)");
  bounds_cmd->add_option("--p", p_for_variant, "exponent (proof-variant route)");
  bounds_cmd->add_option("--F-p", F_p, "F_p value (proof-variant route)");
  bounds_cmd->add_option("--json", json_out, "write the report here instead of stdout");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-derive and check every inequality of a finished run");
  verify_cmd->add_option("-r,--run", run_dir, "run artifact directory")->required();
  verify_cmd->add_option("--json", json_out, "write checks here (default <run>/checks.json)");

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "emit the shell-spectrum series of a finished run");
  spectrum_cmd->add_option("-r,--run", run_dir, "run artifact directory")->required();
  spectrum_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(config_path, overrides, output_override);
    if (bounds_cmd->parsed())
      return do_bounds(inputs, proof_variant, delta, p_for_variant, F_p, eps_source, json_out);
    if (verify_cmd->parsed()) return do_verify(run_dir, json_out);
    if (spectrum_cmd->parsed()) return do_spectrum(run_dir, out_path);
  } catch (const mhds::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const mhds::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const mhds::CflError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const mhds::DivergedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
