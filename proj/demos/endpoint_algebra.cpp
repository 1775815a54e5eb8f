// Endpoint algebra without any time profile: build the transition matrix
// from the branch boundary targets and check that its B block alone sends
// the initial state to the target state.

#include <cstdio>
#include <numbers>

#include "qflat/transfer.hpp"

int main() {
  using namespace qflat;
  constexpr double pi = std::numbers::pi;
  const double alpha = -2.0 * pi / 3.0, beta = pi / 3.0;

  for (const Branch branch : {Branch::a, Branch::b}) {
    const TransferSpec spec{alpha, beta, 10.0, branch};
    const BoundaryTargets t = boundary_targets(spec);
    const Matrix4 phi = transition_matrix(t.g1_T, t.g2_T, t.g3_T);
    const BlockDecomposition blocks = extract_blocks(phi);
    const Vector<2> w = predicted_final(blocks, alpha);

    std::printf("branch %c: g1(T)=%.4f g2(T)=%.4f g3(T)=%.4f\n", branch_letter(branch), t.g1_T,
                t.g2_T, t.g3_T);
    std::printf("  |D|_max = %.2e (vanishes)\n", blocks.D.max_abs());
    std::printf("  B (sin a, cos a) = (%.9f, %.9f)\n", w[0], w[1]);
    std::printf("  (cos b, sin b)   = (%.9f, %.9f)\n\n", std::cos(beta), std::sin(beta));
  }
  return 0;
}
