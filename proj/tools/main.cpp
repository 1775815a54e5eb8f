// qflat command-line front end: design / simulate / verify / sweep.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qflat/commands.hpp"
#include "qflat/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Scenario sources for one subcommand: optional config file plus flag
// overrides (flags win).
struct ScenarioCli {
  std::string config_path;
  std::optional<double> alpha, beta, transfer_time;
  std::optional<std::string> branch, g2_profile, g3_profile;
  std::optional<std::size_t> steps;
  std::optional<double> energy_e1, energy_e2;
  std::optional<std::string> out;
  std::optional<bool> svg;
};

void add_scenario_options(CLI::App* sub, ScenarioCli& s) {
  sub->add_option("config", s.config_path, "scenario config file (key = value lines)")
      ->check(CLI::ExistingFile);
  sub->add_option("--alpha-rad", s.alpha, "initial-state angle alpha [rad]");
  sub->add_option("--beta-rad", s.beta, "target-state angle beta [rad]");
  sub->add_option("--transfer-time", s.transfer_time, "horizon T");
  sub->add_option("--branch", s.branch, "endpoint branch: a or b");
  sub->add_option("--steps", s.steps, "number of RK4 steps / grid intervals");
  sub->add_option("--g2-profile", s.g2_profile, "g2 profile descriptor");
  sub->add_option("--g3-profile", s.g3_profile, "g3 profile descriptor");
  sub->add_option("--energy-e1", s.energy_e1, "lab-frame level energy E1");
  sub->add_option("--energy-e2", s.energy_e2, "lab-frame level energy E2");
  sub->add_option("--out", s.out, "output path prefix");
  sub->add_flag("--svg,!--no-svg", s.svg, "emit SVG charts (simulate only)");
}

qflat::ScenarioConfig resolve_scenario(const ScenarioCli& s) {
  qflat::ScenarioConfig cfg;
  bool have_alpha = false, have_beta = false, have_time = false;
  if (!s.config_path.empty()) {
    cfg = qflat::load_config(s.config_path);
    have_alpha = have_beta = have_time = true;
  }
  if (s.alpha) {
    cfg.alpha_rad = *s.alpha;
    have_alpha = true;
  }
  if (s.beta) {
    cfg.beta_rad = *s.beta;
    have_beta = true;
  }
  if (s.transfer_time) {
    cfg.transfer_time = *s.transfer_time;
    have_time = true;
  }
  if (s.branch) cfg.branch = qflat::parse_branch(*s.branch, "--branch");
  if (s.steps) cfg.steps = *s.steps;
  if (s.g2_profile) cfg.g2_profile = *s.g2_profile;
  if (s.g3_profile) cfg.g3_profile = *s.g3_profile;
  if (s.energy_e1 || s.energy_e2) {
    if (!(s.energy_e1 && s.energy_e2))
      throw qflat::ConfigError("--energy-e1 and --energy-e2 must be given together");
    cfg.energy_levels = qflat::EnergyLevels{*s.energy_e1, *s.energy_e2};
  }
  if (s.out) cfg.output_prefix = *s.out;
  if (s.svg) cfg.emit_svg = *s.svg;

  if (!have_alpha) throw qflat::ConfigError("alpha_rad missing (config file or --alpha-rad)");
  if (!have_beta) throw qflat::ConfigError("beta_rad missing (config file or --beta-rad)");
  if (!have_time)
    throw qflat::ConfigError("transfer_time missing (config file or --transfer-time)");
  qflat::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-loop pulse design for two-level population transfer"};
  app.set_version_flag("--version", "qflat 0.1.0");
  app.require_subcommand(1);

  ScenarioCli design_cli, simulate_cli, verify_cli, sweep_cli;
  double verify_tol = qflat::kDefaultVerifyTol;
  double sweep_tol = qflat::kDefaultVerifyTol;
  std::string sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0;
  std::size_t sweep_count = 1;

  CLI::App* design = app.add_subcommand(
      "design", "Synthesize base functions and controls (no integration); write <out>_design.csv");
  add_scenario_options(design, design_cli);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Integrate the state equation under the designed controls; write <out>_traj.csv");
  add_scenario_options(simulate, simulate_cli);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run both propagation paths and score the transfer; write <out>_verify.txt");
  add_scenario_options(verify, verify_cli);
  verify->add_option("--tol", verify_tol, "pass/fail tolerance for every metric");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Verify a scenario across a parameter range; write <out>_sweep.csv");
  add_scenario_options(sweep, sweep_cli);
  sweep->add_option("--param", sweep_param, "swept parameter: alpha, beta or T")->required();
  sweep->add_option("--from", sweep_from, "first value")->required();
  sweep->add_option("--to", sweep_to, "last value");
  sweep->add_option("--count", sweep_count, "number of values")->required();
  sweep->add_option("--tol", sweep_tol, "pass/fail tolerance per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (design->parsed()) {
      const qflat::ScenarioConfig cfg = resolve_scenario(design_cli);
      qflat::cmd_design(cfg);
      std::cout << "wrote " << cfg.output_prefix << "_design.csv\n";
      return kExitOk;
    }
    if (simulate->parsed()) {
      const qflat::ScenarioConfig cfg = resolve_scenario(simulate_cli);
      qflat::cmd_simulate(cfg);
      std::cout << "wrote " << cfg.output_prefix << "_traj.csv\n";
      return kExitOk;
    }
    if (verify->parsed()) {
      const qflat::ScenarioConfig cfg = resolve_scenario(verify_cli);
      const qflat::VerificationReport r = qflat::cmd_verify(cfg, verify_tol);
      std::cout << (r.passed ? "PASS" : "FAIL") << "  final_state_error_inf="
                << qflat::format_number(r.final_state_error_inf)
                << " residual_population=" << qflat::format_number(r.residual_population)
                << " oracle_mismatch_inf=" << qflat::format_number(r.oracle_mismatch_inf)
                << " (tol=" << qflat::format_number(r.tol) << ")\n"
                << "report: " << cfg.output_prefix << "_verify.txt\n";
      return r.passed ? kExitOk : kExitVerifyFailed;
    }
    if (sweep->parsed()) {
      const qflat::ScenarioConfig cfg = resolve_scenario(sweep_cli);
      const qflat::SweepParam param = qflat::parse_sweep_param(sweep_param);
      if (sweep_count > 1 && !sweep->count("--to"))
        throw qflat::ConfigError("--to is required when --count > 1");
      const bool ok = qflat::cmd_sweep(cfg, param, sweep_from,
                                       sweep->count("--to") ? sweep_to : sweep_from, sweep_count,
                                       sweep_tol);
      std::cout << "wrote " << cfg.output_prefix << "_sweep.csv\n";
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const qflat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qflat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
