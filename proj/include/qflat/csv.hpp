#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "qflat/dynamics.hpp"
#include "qflat/errors.hpp"

namespace qflat {

/// Shortest decimal that parses back to the same double, capped at 12
/// significant digits (values needing more fall back to the 12-digit form).
/// Shortest is by string length, so 10 beats 1e+01.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0 into 0
  char best[40];
  char buf[40];
  int best_len = std::snprintf(best, sizeof(best), "%.12g", x);
  // If the 12-digit form does not parse back exactly, no shorter form can
  // (fewer digits are strictly farther from x), so the cap applies as is.
  if (std::strtod(best, nullptr) != x) return best;
  for (int digits = 1; digits < 12; ++digits) {
    const int len = std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    if (len < best_len && std::strtod(buf, nullptr) == x) {
      std::memcpy(best, buf, static_cast<std::size_t>(len) + 1);
      best_len = len;
    }
  }
  return best;
}

/// Pinned header of the trajectory CSV.
inline constexpr const char* kTrajCsvHeader = "t,g1,g2,g3,u1,u2,x1,x2,x3,x4,pop_w,pop_v,norm_err";

/// Pinned header of the design CSV.
inline constexpr const char* kDesignCsvHeader = "t,g1,g2,g3,u1,u2";

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw Error("cannot open output file: " + path.string());
  return out;
}

}  // namespace detail

/// Design table (flatness path only): t, base functions, controls.
inline void write_design_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out = detail::open_output(path);
  out << kDesignCsvHeader << '\n';
  for (const TrajectoryNode& n : traj.nodes) {
    out << format_number(n.t) << ',' << format_number(n.g.g1) << ',' << format_number(n.g.g2)
        << ',' << format_number(n.g.g3) << ',' << format_number(n.u1) << ','
        << format_number(n.u2) << '\n';
  }
  if (!out) throw Error("error writing " + path.string());
}

/// Full trajectory table with the RK4 state, populations and norm drift.
inline void write_traj_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out = detail::open_output(path);
  out << kTrajCsvHeader << '\n';
  for (const TrajectoryNode& n : traj.nodes) {
    out << format_number(n.t) << ',' << format_number(n.g.g1) << ',' << format_number(n.g.g2)
        << ',' << format_number(n.g.g3) << ',' << format_number(n.u1) << ','
        << format_number(n.u2) << ',' << format_number(n.x_integrated[0]) << ','
        << format_number(n.x_integrated[1]) << ',' << format_number(n.x_integrated[2]) << ','
        << format_number(n.x_integrated[3]) << ',' << format_number(n.pop_w) << ','
        << format_number(n.pop_v) << ',' << format_number(n.norm_err) << '\n';
  }
  if (!out) throw Error("error writing " + path.string());
}

/// Lab-frame control and wavefunction (written only when energy levels are
/// configured).
inline void write_lab_csv(const std::filesystem::path& path, const Trajectory& traj,
                          const EnergyLevels& levels) {
  std::ofstream out = detail::open_output(path);
  out << "t,omega_re,omega_im,psi1_re,psi1_im,psi2_re,psi2_im\n";
  for (const TrajectoryNode& n : traj.nodes) {
    const LabControl c = to_lab_control(n.u1, n.u2, n.t, levels);
    const LabState s = to_lab_state(n.x_integrated, n.t, levels);
    out << format_number(n.t) << ',' << format_number(c.omega_re) << ','
        << format_number(c.omega_im) << ',' << format_number(s.psi1.real()) << ','
        << format_number(s.psi1.imag()) << ',' << format_number(s.psi2.real()) << ','
        << format_number(s.psi2.imag()) << '\n';
  }
  if (!out) throw Error("error writing " + path.string());
}

}  // namespace qflat
