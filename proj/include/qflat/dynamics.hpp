#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qflat/algebra.hpp"
#include "qflat/flatness.hpp"
#include "qflat/mat.hpp"
#include "qflat/transfer.hpp"

namespace qflat {

/// Right-hand side of the bilinear state equation dx/dt = (u1 F1 + u2 F2) x,
/// written out so propagation needs no matrix product:
///   dx1 =  u1 x4 + u2 x3
///   dx2 = -u1 x3 + u2 x4
///   dx3 =  u1 x2 - u2 x1
///   dx4 = -u1 x1 - u2 x2
inline Vec4 rhs(const RealState& x, double u1, double u2) {
  return Vec4{{
      u1 * x[3] + u2 * x[2],
      -u1 * x[2] + u2 * x[3],
      u1 * x[1] - u2 * x[0],
      -u1 * x[0] - u2 * x[1],
  }};
}

/// Level occupations (x1^2 + x2^2, x3^2 + x4^2).
struct Populations {
  double pop_w = 0.0;
  double pop_v = 0.0;
};

inline Populations populations(const RealState& x) {
  return Populations{x[0] * x[0] + x[1] * x[1], x[2] * x[2] + x[3] * x[3]};
}

/// One node of a sampled trajectory. Both propagation paths are recorded:
/// x_integrated from fixed-step RK4 on the state equation, x_closed from the
/// exponential-product transition matrix. norm_err is the drift of the RK4
/// path's norm from its initial value (exactly zero on the first node).
struct TrajectoryNode {
  double t = 0.0;
  BaseCoordinates g;
  BaseDerivatives dg;
  double u1 = 0.0, u2 = 0.0;
  RealState x_integrated;
  RealState x_closed;
  double pop_w = 0.0, pop_v = 0.0;
  double norm_err = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryNode> nodes;
  double horizon = 0.0;
  std::size_t steps = 0;

  const TrajectoryNode& front() const { return nodes.front(); }
  const TrajectoryNode& back() const { return nodes.back(); }
};

namespace detail {

inline TrajectoryNode make_node(const FlatDesign& design, double t, const RealState& x_int,
                                const RealState& x0, double norm0) {
  const DesignSample s = sample_design(design, t);
  TrajectoryNode n;
  n.t = t;
  n.g = s.g;
  n.dg = s.dg;
  n.u1 = s.u1;
  n.u2 = s.u2;
  n.x_integrated = x_int;
  n.x_closed = transition_matrix(s.g) * x0;
  const Populations p = populations(x_int);
  n.pop_w = p.pop_w;
  n.pop_v = p.pop_v;
  n.norm_err = std::abs(x_int.norm() - norm0);
  return n;
}

}  // namespace detail

/// Classical fixed-step RK4 on the state equation with controls evaluated
/// analytically at the stage times. The state is never renormalized; norm
/// drift is recorded as a diagnostic. Also fills the closed-form column.
inline Trajectory integrate(const FlatDesign& design, const RealState& x0, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("integrate: need at least 2 steps");
  const double T = design.horizon;
  const double h = T / static_cast<double>(steps);
  const double norm0 = x0.norm();

  Trajectory traj;
  traj.horizon = T;
  traj.steps = steps;
  traj.nodes.reserve(steps + 1);
  traj.nodes.push_back(detail::make_node(design, 0.0, x0, x0, norm0));

  RealState x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(steps);
    const double t_next = T * static_cast<double>(k + 1) / static_cast<double>(steps);
    const Controls ua = synthesize_controls(design, t);
    const Controls um = synthesize_controls(design, t + 0.5 * h);
    const Controls ub = synthesize_controls(design, t_next);

    const Vec4 k1 = rhs(x, ua.u1, ua.u2);
    const Vec4 k2 = rhs(x + (0.5 * h) * k1, um.u1, um.u2);
    const Vec4 k3 = rhs(x + (0.5 * h) * k2, um.u1, um.u2);
    const Vec4 k4 = rhs(x + h * k3, ub.u1, ub.u2);
    x += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);

    traj.nodes.push_back(detail::make_node(design, t_next, x, x0, norm0));
  }
  return traj;
}

/// Analytic propagation x(t) = Phi(t,0) x0 on the same grid; both state
/// columns carry the closed-form value.
inline Trajectory propagate_closed_form(const FlatDesign& design, const RealState& x0,
                                        std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("propagate_closed_form: need at least 2 steps");
  const double T = design.horizon;
  const double norm0 = x0.norm();

  Trajectory traj;
  traj.horizon = T;
  traj.steps = steps;
  traj.nodes.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(steps);
    TrajectoryNode n = detail::make_node(design, t, RealState{}, x0, norm0);
    n.x_integrated = n.x_closed;
    const Populations p = populations(n.x_integrated);
    n.pop_w = p.pop_w;
    n.pop_v = p.pop_v;
    n.norm_err = std::abs(n.x_integrated.norm() - norm0);
    traj.nodes.push_back(n);
  }
  return traj;
}

/// RK4 integration of the transition-matrix initial-value problem
/// dPhi/dt = (u1 F1 + u2 F2) Phi, Phi(0) = I, sampled at the grid nodes.
/// Independent route against the exponential-product closed form.
inline std::vector<Matrix4> integrate_transition_ivp(const FlatDesign& design,
                                                     std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("integrate_transition_ivp: need at least 2 steps");
  const double T = design.horizon;
  const double h = T / static_cast<double>(steps);

  const auto ode = [](const Matrix4& phi, const Controls& u) {
    return (u.u1 * kF1 + u.u2 * kF2) * phi;
  };

  std::vector<Matrix4> out;
  out.reserve(steps + 1);
  Matrix4 phi = kIdentity4;
  out.push_back(phi);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(steps);
    const double t_next = T * static_cast<double>(k + 1) / static_cast<double>(steps);
    const Controls ua = synthesize_controls(design, t);
    const Controls um = synthesize_controls(design, t + 0.5 * h);
    const Controls ub = synthesize_controls(design, t_next);

    const Matrix4 k1 = ode(phi, ua);
    const Matrix4 k2 = ode(phi + (0.5 * h) * k1, um);
    const Matrix4 k3 = ode(phi + (0.5 * h) * k2, um);
    const Matrix4 k4 = ode(phi + h * k3, ub);
    phi += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    out.push_back(phi);
  }
  return out;
}

/// Static level energies of the lab-frame Hamiltonian (hbar = 1 units).
struct EnergyLevels {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Lab-frame complex control at one instant.
struct LabControl {
  double t = 0.0;
  double omega_re = 0.0;
  double omega_im = 0.0;
};

/// Undo the interaction-frame rotation of the control:
/// Omega(t) = e^{+i (E2 - E1) t} (u1 + i u2). The modulus equals |u|.
inline LabControl to_lab_control(double u1, double u2, double t, const EnergyLevels& levels) {
  const std::complex<double> omega =
      std::polar(1.0, (levels.e2 - levels.e1) * t) * std::complex<double>(u1, u2);
  return LabControl{t, omega.real(), omega.imag()};
}

/// Lab-frame wavefunction components.
struct LabState {
  std::complex<double> psi1;
  std::complex<double> psi2;
};

/// psi1 = e^{-i E1 t} (x1 + i x2), psi2 = e^{-i E2 t} (x3 + i x4).
inline LabState to_lab_state(const RealState& x, double t, const EnergyLevels& levels) {
  return LabState{
      std::polar(1.0, -levels.e1 * t) * std::complex<double>(x[0], x[1]),
      std::polar(1.0, -levels.e2 * t) * std::complex<double>(x[2], x[3]),
  };
}

}  // namespace qflat
