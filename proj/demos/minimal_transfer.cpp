// Smallest end-to-end use of the library: design the reference transfer,
// integrate the state equation under the synthesized controls, and print
// the endpoint quality.

#include <cstdio>
#include <numbers>

#include "qflat/commands.hpp"

int main() {
  using namespace qflat;
  constexpr double pi = std::numbers::pi;

  const TransferSpec spec{-2.0 * pi / 3.0, pi / 3.0, 10.0, Branch::b};
  const BoundaryTargets targets = boundary_targets(spec);
  const FlatDesign design = make_branch_b_design(targets.g3_T, spec.horizon);

  const Trajectory traj = integrate(design, initial_state(spec.alpha), 20000);
  const VerificationReport report = verify_transfer(traj, spec, 1e-5);

  const RealState& xT = traj.back().x_integrated;
  std::printf("final state      (%.9f, %.9f, %.2e, %.2e)\n", xT[0], xT[1], xT[2], xT[3]);
  std::printf("target state     (%.9f, %.9f, 0, 0)\n", std::cos(spec.beta), std::sin(spec.beta));
  std::printf("final error inf  %.3e\n", report.final_state_error_inf);
  std::printf("residual pop     %.3e\n", report.residual_population);
  std::printf("norm drift       %.3e\n", report.max_norm_drift);
  std::printf("oracle mismatch  %.3e\n", report.oracle_mismatch_inf);
  std::printf("%s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? 0 : 1;
}
