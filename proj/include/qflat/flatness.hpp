#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "qflat/algebra.hpp"
#include "qflat/errors.hpp"
#include "qflat/profile.hpp"

namespace qflat {

/// How the dependent base function g1 is read off the binding condition
///   dg2 sin(2g1) + dg3 cos(2g2) cos(2g1) = 0.
///
/// `principal` is the arctan branch with 2g1 in (-pi/2, pi/2); it requires
/// dg2 != 0 on the open horizon and is the branch the b-type endpoint design
/// uses. `extended` follows the continuous branch with 2g1 in (-pi/2, 3pi/2],
/// which a-type designs need: their g2 returns to zero, so dg2 changes sign
/// once and g1 travels from 0 to pi/2.
enum class RecoveryMode { principal, extended };

/// Freely chosen parameter functions (g2, g3) plus the recovery mode.
/// Valid designs keep dg3(0) = dg3(T) = 0 so that g1 vanishes at both ends,
/// and satisfy the per-mode slope structure checked by validate_design().
struct FlatDesign {
  ParameterProfile g2;
  ParameterProfile g3;
  double horizon = 0.0;
  RecoveryMode mode = RecoveryMode::principal;
};

/// Linear g2 rising from 0 to pi/2 over [0, T].
inline ParameterProfile make_linear_g2(double horizon) {
  if (!(horizon > 0.0)) throw Error("make_linear_g2: horizon must be positive");
  return ParameterProfile::linear(0.0, std::numbers::pi / 2.0, horizon);
}

/// Cubic g3 rising from 0 to gamma with zero endpoint slopes:
/// g3(t) = gamma (3 tau^2 - 2 tau^3).
inline ParameterProfile make_cubic_g3(double gamma, double horizon) {
  if (!(horizon > 0.0)) throw Error("make_cubic_g3: horizon must be positive");
  return ParameterProfile::cubic_hermite(0.0, gamma, 0.0, 0.0, horizon);
}

/// Default b-type design: linear g2, cubic g3 to the endpoint gamma.
inline FlatDesign make_branch_b_design(double gamma, double horizon) {
  return FlatDesign{make_linear_g2(horizon), make_cubic_g3(gamma, horizon), horizon,
                    RecoveryMode::principal};
}

/// Quadratic arch g2(t) = 2 pi tau (1 - tau): returns to zero at T with a
/// single slope reversal at T/2 and peak value pi/2.
inline ParameterProfile make_arch_g2(double horizon) {
  if (!(horizon > 0.0)) throw Error("make_arch_g2: horizon must be positive");
  const double twopi = 2.0 * std::numbers::pi;
  return ParameterProfile::polynomial({0.0, twopi, -twopi}, horizon);
}

/// g3 for a-type designs: the cubic to gamma plus a zero-endpoint quintic
/// bump sized so dg3(T/2) = 1/T exactly. That keeps the g1 branch crossing
/// at T/2 transversal for every gamma, including gamma = 0.
inline ParameterProfile make_return_g3(double gamma, double horizon) {
  if (!(horizon > 0.0)) throw Error("make_return_g3: horizon must be positive");
  const double kappa = 16.0 * (1.0 - 1.5 * gamma);
  return ParameterProfile::polynomial(
      {0.0, 0.0, 3.0 * gamma - 0.5 * kappa, -2.0 * gamma + 2.0 * kappa, -2.5 * kappa, kappa},
      horizon);
}

/// Default a-type design: arch g2, returning g3, extended recovery.
inline FlatDesign make_branch_a_design(double gamma, double horizon) {
  return FlatDesign{make_arch_g2(horizon), make_return_g3(gamma, horizon), horizon,
                    RecoveryMode::extended};
}

namespace detail {

/// The binding condition constrains (cos 2g1, sin 2g1) to be parallel to
/// (dg2, -dg3 cos 2g2); these are that vector's components.
struct BindingVector {
  double x;  // dg2
  double y;  // -dg3 cos(2 g2)
};

inline BindingVector binding_vector(const FlatDesign& d, double t) {
  return BindingVector{d.g2.deriv(t), -d.g3.deriv(t) * std::cos(2.0 * d.g2.value(t))};
}

inline double recover_angle(const FlatDesign& d, const BindingVector& b, double t) {
  if (d.mode == RecoveryMode::principal) {
    if (b.x == 0.0)
      throw DegenerateProfile("recover_g1: dg2 vanishes at t = " + std::to_string(t));
    return std::atan(b.y / b.x);
  }
  if (b.x == 0.0 && b.y == 0.0)
    throw DegenerateProfile("recover_g1: binding vector vanishes at t = " + std::to_string(t));
  double theta = std::atan2(b.y, b.x);
  if (theta < -std::numbers::pi / 2.0) theta += 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace detail

/// Dependent base function from the binding condition. Principal mode gives
/// g1 in (-pi/4, pi/4) and throws DegenerateProfile when dg2(t) = 0.
inline double recover_g1(const FlatDesign& design, double t) {
  return 0.5 * detail::recover_angle(design, detail::binding_vector(design, t), t);
}

/// Analytic time derivative of recover_g1 (chain rule on the binding-vector
/// angle): dg1 = (x ydot - y xdot) / (2 (x^2 + y^2)).
inline double g1_dot(const FlatDesign& design, double t) {
  const auto [x, y] = detail::binding_vector(design, t);
  const double r2 = x * x + y * y;
  if (r2 == 0.0)
    throw DegenerateProfile("g1_dot: binding vector vanishes at t = " + std::to_string(t));
  if (design.mode == RecoveryMode::principal && x == 0.0)
    throw DegenerateProfile("g1_dot: dg2 vanishes at t = " + std::to_string(t));
  const double g2v = design.g2.value(t);
  const double dg2 = x, dg3 = design.g3.deriv(t);
  const double xdot = design.g2.second_deriv(t);
  const double ydot =
      -design.g3.second_deriv(t) * std::cos(2.0 * g2v) + 2.0 * dg2 * dg3 * std::sin(2.0 * g2v);
  return 0.5 * (x * ydot - y * xdot) / r2;
}

struct Controls {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// One design sample: base coordinates, their derivatives, and controls.
struct DesignSample {
  BaseCoordinates g;
  BaseDerivatives dg;
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Tolerance for the u2-vs-f2 branch consistency residual.
inline constexpr double kBranchResidualTol = 1e-9;

/// Full pointwise synthesis at time t: algebra and differentiation only,
/// no integration anywhere.
inline DesignSample sample_design(const FlatDesign& design, double t) {
  const auto b = detail::binding_vector(design, t);
  const double theta = detail::recover_angle(design, b, t);
  const double g1 = 0.5 * theta;

  DesignSample s;
  s.g = BaseCoordinates{g1, design.g2.value(t), design.g3.value(t)};
  s.dg = BaseDerivatives{g1_dot(design, t), design.g2.deriv(t), design.g3.deriv(t)};
  s.u1 = s.dg.dg1 + s.dg.dg3 * std::sin(2.0 * s.g.g2);
  s.u2 = std::hypot(b.x, b.y);

  // The nonnegative root for u2 must coincide with the f2 coefficient line;
  // a mismatch means the recovered g1 sits on the wrong branch.
  const double f2 = s.dg.dg2 * std::cos(theta) - s.dg.dg3 * std::cos(2.0 * s.g.g2) * std::sin(theta);
  if (std::abs(s.u2 - f2) > kBranchResidualTol)
    throw BranchInconsistency("synthesize_controls: u2 root inconsistent with f2 at t = " +
                              std::to_string(t));
  return s;
}

/// Controls (u1, u2) at time t:
///   u1 = dg1 + dg3 sin(2 g2),  u2 = sqrt(dg2^2 + dg3^2 cos^2(2 g2)).
inline Controls synthesize_controls(const FlatDesign& design, double t) {
  const DesignSample s = sample_design(design, t);
  return Controls{s.u1, s.u2};
}

/// Structural validation of a design against endpoint targets. Slope
/// structure is checked on a sampled grid; endpoint identities use an
/// absolute tolerance of 1e-9. Throws DegenerateProfile on failure.
inline void validate_design(const FlatDesign& design, double g2_target, double g3_target,
                            std::size_t samples = 2001) {
  const double T = design.horizon;
  if (!(T > 0.0)) throw DegenerateProfile("validate_design: nonpositive horizon");
  if (design.g2.horizon() != T || design.g3.horizon() != T)
    throw DegenerateProfile("validate_design: profile horizons disagree with design horizon");

  constexpr double tol = 1e-9;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) throw DegenerateProfile("validate_design: " + what);
  };
  check(std::abs(design.g2.value(0.0)) <= tol, "g2(0) != 0");
  check(std::abs(design.g3.value(0.0)) <= tol, "g3(0) != 0");
  check(std::abs(design.g2.value(T) - g2_target) <= tol, "g2(T) misses its endpoint target");
  check(std::abs(design.g3.value(T) - g3_target) <= tol, "g3(T) misses its endpoint target");
  check(std::abs(design.g3.deriv(0.0)) <= tol, "dg3(0) != 0");
  check(std::abs(design.g3.deriv(T)) <= tol, "dg3(T) != 0");

  if (design.mode == RecoveryMode::principal) {
    // dg2 must keep one sign on the open horizon.
    double min_abs = std::numeric_limits<double>::infinity();
    const double sign = design.g2.deriv(T / 2.0) >= 0.0 ? 1.0 : -1.0;
    for (std::size_t k = 1; k + 1 < samples; ++k) {
      const double t = T * static_cast<double>(k) / static_cast<double>(samples - 1);
      const double d = sign * design.g2.deriv(t);
      if (d < min_abs) min_abs = d;
    }
    check(min_abs > 0.0, "dg2 vanishes or changes sign inside (0, T)");
  } else {
    check(design.g2.deriv(0.0) > 0.0, "extended mode needs dg2(0) > 0");
    check(design.g2.deriv(T) < 0.0, "extended mode needs dg2(T) < 0");
    // Exactly one slope reversal, crossed where the binding vector points up.
    std::size_t reversals = 0;
    double prev = design.g2.deriv(0.0);
    double lo = 0.0, hi = T;
    for (std::size_t k = 1; k < samples; ++k) {
      const double t = T * static_cast<double>(k) / static_cast<double>(samples - 1);
      const double d = design.g2.deriv(t);
      if ((prev > 0.0 && d < 0.0) || (prev < 0.0 && d > 0.0)) {
        ++reversals;
        lo = T * static_cast<double>(k - 1) / static_cast<double>(samples - 1);
        hi = t;
      }
      if (d != 0.0) prev = d;
    }
    check(reversals == 1, "extended mode needs exactly one dg2 sign change");
    for (int i = 0; i < 200 && hi - lo > 1e-14 * T; ++i) {
      const double mid = 0.5 * (lo + hi);
      (design.g2.deriv(mid) > 0.0 ? lo : hi) = mid;
    }
    const double t_cross = 0.5 * (lo + hi);
    const auto b = detail::binding_vector(design, t_cross);
    check(b.y > 0.0, "binding vector must point upward at the dg2 reversal");
  }
}

}  // namespace qflat
