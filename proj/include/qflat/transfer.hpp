#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qflat/algebra.hpp"
#include "qflat/errors.hpp"
#include "qflat/mat.hpp"

namespace qflat {

/// State vector of the real 4D model; (x1, x2) carry the upper-level
/// amplitude, (x3, x4) the lower-level amplitude.
using RealState = Vec4;

/// Endpoint alternatives that annihilate the D block of the transition
/// matrix at t = T: `a` forces cos g1(T) = sin g2(T) = 0, `b` forces
/// sin g1(T) = cos g2(T) = 0.
enum class Branch { a, b };

inline char branch_letter(Branch b) { return b == Branch::a ? 'a' : 'b'; }

/// Population-transfer task: drive (0, 0, sin a, cos a) to
/// (cos b, sin b, 0, 0) over [0, T] using the chosen endpoint branch.
struct TransferSpec {
  double alpha = 0.0;
  double beta = 0.0;
  double horizon = 0.0;
  Branch branch = Branch::b;
};

/// Required base-function values at both ends of the horizon.
struct BoundaryTargets {
  double g1_0 = 0.0, g2_0 = 0.0, g3_0 = 0.0;
  double g1_T = 0.0, g2_T = 0.0, g3_T = 0.0;
};

inline RealState initial_state(double alpha) {
  return RealState{{0.0, 0.0, std::sin(alpha), std::cos(alpha)}};
}

inline RealState target_state(double beta) {
  return RealState{{std::cos(beta), std::sin(beta), 0.0, 0.0}};
}

/// Endpoint targets for the base functions. Branch a: g1(T) = pi/2,
/// g2(T) = 0, g3(T) = -(alpha + beta). Branch b: g1(T) = 0, g2(T) = pi/2,
/// g3(T) = pi/2 - (alpha + beta). All three start at zero. Targets are the
/// principal representatives; alternatives shifted by multiples of pi are
/// not generated.
inline BoundaryTargets boundary_targets(const TransferSpec& spec) {
  const double half_pi = std::numbers::pi / 2.0;
  BoundaryTargets t;
  if (spec.branch == Branch::a) {
    t.g1_T = half_pi;
    t.g2_T = 0.0;
    t.g3_T = -(spec.alpha + spec.beta);
  } else {
    t.g1_T = 0.0;
    t.g2_T = half_pi;
    t.g3_T = half_pi - (spec.alpha + spec.beta);
  }
  return t;
}

/// 2x2 blocks of the 4x4 transition matrix, partitioned rows/cols 1-2
/// against 3-4.
struct BlockDecomposition {
  Matrix2 A, B, C, D;
};

inline BlockDecomposition extract_blocks(const Matrix4& phi) {
  BlockDecomposition b;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      b.A(i, j) = phi(i, j);
      b.B(i, j) = phi(i, j + 2);
      b.C(i, j) = phi(i + 2, j);
      b.D(i, j) = phi(i + 2, j + 2);
    }
  return b;
}

/// Default bound on ||D|| for a valid endpoint transition matrix.
inline constexpr double kEndpointTol = 1e-9;

/// Final upper-level pair w(T) = B (sin alpha, cos alpha), valid only when
/// the D block vanishes. Throws EndpointViolation otherwise.
inline Vector<2> predicted_final(const BlockDecomposition& blocks, double alpha,
                                 double endpoint_tol = kEndpointTol) {
  if (blocks.D.max_abs() > endpoint_tol)
    throw EndpointViolation("predicted_final: D block does not vanish (max |entry| = " +
                            std::to_string(blocks.D.max_abs()) + ")");
  return blocks.B * Vector<2>{{std::sin(alpha), std::cos(alpha)}};
}

/// Verification metrics for one simulated transfer. All error fields are
/// nonnegative; `passed` means every metric is at or below `tol`.
struct VerificationReport {
  double final_state_error_inf = 0.0;
  double residual_population = 0.0;
  double max_norm_drift = 0.0;
  double max_f3_residual = 0.0;
  double oracle_mismatch_inf = 0.0;
  double tol = 0.0;
  bool passed = false;
};

}  // namespace qflat
