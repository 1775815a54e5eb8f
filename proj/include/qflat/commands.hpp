#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qflat/csv.hpp"
#include "qflat/dynamics.hpp"
#include "qflat/scenario.hpp"
#include "qflat/svg.hpp"
#include "qflat/verify.hpp"

namespace qflat {

inline constexpr double kDefaultVerifyTol = 1e-5;

/// Design-phase output: pointwise evaluation of the flatness formulas on the
/// scenario grid. No integration happens on this path.
inline void cmd_design(const ScenarioConfig& config) {
  const FlatDesign design = build_design(config);
  const std::size_t n = config.steps;
  const double T = config.transfer_time;

  std::ofstream out =
      detail::open_output(std::filesystem::path(config.output_prefix + "_design.csv"));
  out << kDesignCsvHeader << '\n';
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(n);
    const DesignSample s = sample_design(design, t);
    out << format_number(t) << ',' << format_number(s.g.g1) << ',' << format_number(s.g.g2)
        << ',' << format_number(s.g.g3) << ',' << format_number(s.u1) << ','
        << format_number(s.u2) << '\n';
  }
  if (!out) throw Error("error writing design CSV");
}

/// Run the full pipeline for one scenario: build and validate the design,
/// then integrate the state equation alongside the closed-form propagator.
inline Trajectory run_pipeline(const ScenarioConfig& config) {
  const FlatDesign design = build_design(config);
  return integrate(design, initial_state(config.alpha_rad), config.steps);
}

namespace detail {

inline void emit_plots(const std::string& prefix, const Trajectory& traj) {
  std::vector<double> t, g1, g2, g3, u1, u2, x1, x2, x3, x4, pw, pv;
  for (const TrajectoryNode& n : traj.nodes) {
    t.push_back(n.t);
    g1.push_back(n.g.g1);
    g2.push_back(n.g.g2);
    g3.push_back(n.g.g3);
    u1.push_back(n.u1);
    u2.push_back(n.u2);
    x1.push_back(n.x_integrated[0]);
    x2.push_back(n.x_integrated[1]);
    x3.push_back(n.x_integrated[2]);
    x4.push_back(n.x_integrated[3]);
    pw.push_back(n.pop_w);
    pv.push_back(n.pop_v);
  }
  svg::write_line_chart(prefix + "_base_functions.svg", "Base functions", "t", "angle (rad)",
                        {{"g1", t, g1}, {"g2", t, g2}, {"g3", t, g3}});
  svg::write_line_chart(prefix + "_controls.svg", "Control variables", "t", "control amplitude",
                        {{"u1", t, u1}, {"u2", t, u2}});
  svg::write_line_chart(prefix + "_states.svg", "State variables", "t", "amplitude",
                        {{"x1", t, x1}, {"x2", t, x2}, {"x3", t, x3}, {"x4", t, x4}});
  svg::write_line_chart(prefix + "_populations.svg", "Population change", "t", "population",
                        {{"x1^2+x2^2", t, pw}, {"x3^2+x4^2", t, pv}});
}

}  // namespace detail

/// Simulate and write the trajectory CSV, the optional lab-frame CSV and the
/// optional SVG charts. Plotting is best-effort and never fails the command.
inline void cmd_simulate(const ScenarioConfig& config) {
  const Trajectory traj = run_pipeline(config);
  write_traj_csv(config.output_prefix + "_traj.csv", traj);
  if (config.energy_levels)
    write_lab_csv(config.output_prefix + "_lab.csv", traj, *config.energy_levels);
  if (config.emit_svg) {
    try {
      detail::emit_plots(config.output_prefix, traj);
    } catch (const std::exception& e) {
      std::cerr << "warning: plot emission failed: " << e.what() << '\n';
    }
  }
}

/// Simulate and score one scenario.
inline VerificationReport run_verify(const ScenarioConfig& config, double tol) {
  return verify_transfer(run_pipeline(config), to_transfer_spec(config), tol);
}

inline void write_verify_report(const std::filesystem::path& path,
                                const VerificationReport& report, const ScenarioConfig& config) {
  std::ofstream out = detail::open_output(path);
  out << "passed = " << (report.passed ? "true" : "false") << '\n'
      << "tol = " << format_number(report.tol) << '\n'
      << "final_state_error_inf = " << format_number(report.final_state_error_inf) << '\n'
      << "residual_population = " << format_number(report.residual_population) << '\n'
      << "max_norm_drift = " << format_number(report.max_norm_drift) << '\n'
      << "max_f3_residual = " << format_number(report.max_f3_residual) << '\n'
      << "oracle_mismatch_inf = " << format_number(report.oracle_mismatch_inf) << '\n'
      << "alpha_rad = " << format_number(config.alpha_rad) << '\n'
      << "beta_rad = " << format_number(config.beta_rad) << '\n'
      << "transfer_time = " << format_number(config.transfer_time) << '\n'
      << "branch = " << branch_letter(config.branch) << '\n'
      << "steps = " << config.steps << '\n';
  if (!out) throw Error("error writing " + path.string());
}

/// Verify one scenario; returns the report after writing
/// <prefix>_verify.txt. The caller maps report.passed to the exit status.
inline VerificationReport cmd_verify(const ScenarioConfig& config,
                                     double tol = kDefaultVerifyTol) {
  const VerificationReport report = run_verify(config, tol);
  write_verify_report(config.output_prefix + "_verify.txt", report, config);
  return report;
}

enum class SweepParam { alpha, beta, transfer_time };

inline SweepParam parse_sweep_param(const std::string& s) {
  if (s == "alpha") return SweepParam::alpha;
  if (s == "beta") return SweepParam::beta;
  if (s == "T" || s == "transfer_time") return SweepParam::transfer_time;
  throw ConfigError("sweep parameter must be alpha, beta or T, got '" + s + "'");
}

inline const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::alpha: return "alpha";
    case SweepParam::beta: return "beta";
    default: return "T";
  }
}

struct SweepRow {
  double value = 0.0;
  double g3_target = 0.0;
  VerificationReport report;
  std::string status = "ok";  // "ok" or the error message
};

/// Sweep one parameter over an inclusive linear range; every row runs the
/// full pipeline independently and row errors do not stop the sweep.
inline std::vector<SweepRow> run_sweep(const ScenarioConfig& base, SweepParam param, double from,
                                       double to, std::size_t count,
                                       double tol = kDefaultVerifyTol) {
  if (count < 1) throw ConfigError("sweep count must be at least 1");
  std::vector<SweepRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double value =
        count == 1 ? from
                   : from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
    ScenarioConfig c = base;
    switch (param) {
      case SweepParam::alpha: c.alpha_rad = value; break;
      case SweepParam::beta: c.beta_rad = value; break;
      case SweepParam::transfer_time: c.transfer_time = value; break;
    }
    SweepRow row;
    row.value = value;
    try {
      row.g3_target = boundary_targets(to_transfer_spec(c)).g3_T;
      row.report = run_verify(c, tol);
      if (!row.report.passed) row.status = "verification failed";
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      row.status = msg;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_sweep_csv(const std::filesystem::path& path, SweepParam param,
                            const std::vector<SweepRow>& rows) {
  std::ofstream out = detail::open_output(path);
  out << "parameter,value,g3_target,final_state_error_inf,residual_population,status\n";
  for (const SweepRow& r : rows) {
    out << sweep_param_name(param) << ',' << format_number(r.value) << ','
        << format_number(r.g3_target) << ',' << format_number(r.report.final_state_error_inf)
        << ',' << format_number(r.report.residual_population) << ',' << r.status << '\n';
  }
  if (!out) throw Error("error writing " + path.string());
}

/// Sweep command: writes <prefix>_sweep.csv; returns true iff every row
/// verified cleanly.
inline bool cmd_sweep(const ScenarioConfig& base, SweepParam param, double from, double to,
                      std::size_t count, double tol = kDefaultVerifyTol) {
  const std::vector<SweepRow> rows = run_sweep(base, param, from, to, count, tol);
  write_sweep_csv(base.output_prefix + "_sweep.csv", param, rows);
  bool all_ok = true;
  for (const SweepRow& r : rows) all_ok = all_ok && r.status == "ok";
  return all_ok;
}

}  // namespace qflat
