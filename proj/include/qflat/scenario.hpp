#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qflat/dynamics.hpp"
#include "qflat/errors.hpp"
#include "qflat/flatness.hpp"
#include "qflat/transfer.hpp"

namespace qflat {

/// One simulation scenario, as read from a flat key = value config file.
/// Profile descriptors: "auto" (branch-appropriate default family),
/// "linear", "cubic", or "poly:c0,c1,..." with coefficients in powers of
/// t/T.
struct ScenarioConfig {
  double alpha_rad = 0.0;
  double beta_rad = 0.0;
  double transfer_time = 0.0;
  Branch branch = Branch::b;
  std::size_t steps = 10000;
  std::string g2_profile = "auto";
  std::string g3_profile = "auto";
  std::optional<EnergyLevels> energy_levels;
  std::string output_prefix = "out";
  bool emit_svg = true;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view v, const std::string& where) {
  const std::string s(v);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw ConfigError(where + ": not a number: '" + s + "'");
  return x;
}

inline std::size_t parse_count(std::string_view v, const std::string& where) {
  const std::string s(v);
  std::size_t x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(where + ": not a nonnegative integer: '" + s + "'");
  return x;
}

inline bool parse_bool(std::string_view v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": not a boolean: '" + std::string(v) + "'");
}

}  // namespace detail

inline Branch parse_branch(std::string_view v, const std::string& where = "branch") {
  if (v == "a") return Branch::a;
  if (v == "b") return Branch::b;
  throw ConfigError(where + ": must be 'a' or 'b', got '" + std::string(v) + "'");
}

/// Validate invariants that do not need the profiles built.
inline void validate_config(const ScenarioConfig& c) {
  if (!std::isfinite(c.alpha_rad)) throw ConfigError("alpha_rad: must be finite");
  if (!std::isfinite(c.beta_rad)) throw ConfigError("beta_rad: must be finite");
  if (!(c.transfer_time > 0.0)) throw ConfigError("transfer_time: must be positive");
  if (!std::isfinite(c.transfer_time)) throw ConfigError("transfer_time: must be finite");
  if (c.steps < 2) throw ConfigError("steps: must be at least 2");
  if (c.energy_levels &&
      (!std::isfinite(c.energy_levels->e1) || !std::isfinite(c.energy_levels->e2)))
    throw ConfigError("energy levels must be finite");
  if (c.output_prefix.empty()) throw ConfigError("output_prefix: must not be empty");
}

inline TransferSpec to_transfer_spec(const ScenarioConfig& c) {
  return TransferSpec{c.alpha_rad, c.beta_rad, c.transfer_time, c.branch};
}

namespace detail {

inline ParameterProfile build_profile(const std::string& descriptor, bool is_g2, Branch branch,
                                      double target, double horizon) {
  if (descriptor == "auto") {
    if (is_g2)
      return branch == Branch::a ? make_arch_g2(horizon)
                                 : ParameterProfile::linear(0.0, target, horizon);
    return branch == Branch::a ? make_return_g3(target, horizon)
                               : make_cubic_g3(target, horizon);
  }
  if (descriptor == "linear") return ParameterProfile::linear(0.0, target, horizon);
  if (descriptor == "cubic")
    return ParameterProfile::cubic_hermite(0.0, target, 0.0, 0.0, horizon);
  constexpr std::string_view kPoly = "poly:";
  if (descriptor.rfind(kPoly, 0) == 0) {
    std::vector<double> coeffs;
    std::string_view rest = std::string_view(descriptor).substr(kPoly.size());
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view tok = trim(rest.substr(0, comma));
      coeffs.push_back(parse_double(tok, "poly coefficient"));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (coeffs.empty()) throw ConfigError("poly profile needs at least one coefficient");
    return ParameterProfile::polynomial(std::move(coeffs), horizon);
  }
  throw ConfigError("unknown profile descriptor '" + descriptor +
                    "' (expected auto, linear, cubic or poly:...)");
}

}  // namespace detail

/// Build the flat design a scenario describes and validate it against the
/// branch boundary targets.
inline FlatDesign build_design(const ScenarioConfig& c) {
  validate_config(c);
  const BoundaryTargets targets = boundary_targets(to_transfer_spec(c));
  FlatDesign d;
  d.horizon = c.transfer_time;
  d.mode = c.branch == Branch::a ? RecoveryMode::extended : RecoveryMode::principal;
  d.g2 = detail::build_profile(c.g2_profile, true, c.branch, targets.g2_T, c.transfer_time);
  d.g3 = detail::build_profile(c.g3_profile, false, c.branch, targets.g3_T, c.transfer_time);
  validate_design(d, targets.g2_T, targets.g3_T);
  return d;
}

/// Parse a flat key = value config text. '#' starts a comment; blank lines
/// are skipped; unknown and duplicate keys are rejected. `source` names the
/// input in diagnostics.
inline ScenarioConfig parse_config(std::string_view text, const std::string& source = "<config>") {
  ScenarioConfig c;
  std::vector<std::string> seen;
  bool have_alpha = false, have_beta = false, have_time = false;
  std::optional<double> e1, e2;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::string where = source + ":" + std::to_string(lineno);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
    const std::string key{detail::trim(line.substr(0, eq))};
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    for (const std::string& k : seen)
      if (k == key) throw ConfigError(where + ": duplicate key '" + key + "'");
    seen.push_back(key);

    if (key == "alpha_rad") {
      c.alpha_rad = detail::parse_double(value, where);
      have_alpha = true;
    } else if (key == "beta_rad") {
      c.beta_rad = detail::parse_double(value, where);
      have_beta = true;
    } else if (key == "transfer_time") {
      c.transfer_time = detail::parse_double(value, where);
      have_time = true;
    } else if (key == "branch") {
      c.branch = parse_branch(value, where);
    } else if (key == "steps") {
      c.steps = detail::parse_count(value, where);
    } else if (key == "g2_profile") {
      c.g2_profile = std::string(value);
    } else if (key == "g3_profile") {
      c.g3_profile = std::string(value);
    } else if (key == "energy_e1") {
      e1 = detail::parse_double(value, where);
    } else if (key == "energy_e2") {
      e2 = detail::parse_double(value, where);
    } else if (key == "output_prefix") {
      c.output_prefix = std::string(value);
    } else if (key == "emit_svg") {
      c.emit_svg = detail::parse_bool(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }

  if (!have_alpha) throw ConfigError(source + ": missing required key 'alpha_rad'");
  if (!have_beta) throw ConfigError(source + ": missing required key 'beta_rad'");
  if (!have_time) throw ConfigError(source + ": missing required key 'transfer_time'");
  if (e1.has_value() != e2.has_value())
    throw ConfigError(source + ": energy_e1 and energy_e2 must be given together");
  if (e1) c.energy_levels = EnergyLevels{*e1, *e2};

  validate_config(c);
  return c;
}

/// Read and parse a scenario file.
inline ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace qflat
