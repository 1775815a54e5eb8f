#pragma once

#include <algorithm>
#include <cmath>

#include "qflat/dynamics.hpp"
#include "qflat/transfer.hpp"
#include "qflat/weinorman.hpp"

namespace qflat {

/// Score a simulated transfer against its specification. Every metric must
/// be at or below `tol` for the report to pass:
///   - final_state_error_inf: RK4 final state against the target state
///   - residual_population:   x3(T)^2 + x4(T)^2 of the RK4 path
///   - max_norm_drift:        worst norm drift of the RK4 path
///   - max_f3_residual:       worst |f3| of the base-function derivative
///                            triple (the binding condition)
///   - oracle_mismatch_inf:   worst disagreement between the RK4 and
///                            closed-form states over all nodes
inline VerificationReport verify_transfer(const Trajectory& traj, const TransferSpec& spec,
                                          double tol) {
  VerificationReport r;
  r.tol = tol;

  const RealState target = target_state(spec.beta);
  const TrajectoryNode& last = traj.back();
  r.final_state_error_inf = (last.x_integrated - target).inf_norm();
  r.residual_population = populations(last.x_integrated).pop_v;

  for (const TrajectoryNode& n : traj.nodes) {
    r.max_norm_drift = std::max(r.max_norm_drift, n.norm_err);
    const WNCoefficients f = cbh_coefficients(n.g, n.dg);
    r.max_f3_residual = std::max(r.max_f3_residual, std::abs(f.f3));
    r.oracle_mismatch_inf =
        std::max(r.oracle_mismatch_inf, (n.x_integrated - n.x_closed).inf_norm());
  }

  r.passed = r.final_state_error_inf <= tol && r.residual_population <= tol &&
             r.max_norm_drift <= tol && r.max_f3_residual <= tol && r.oracle_mismatch_inf <= tol;
  return r;
}

}  // namespace qflat
