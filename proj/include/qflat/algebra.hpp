#pragma once

#include <cmath>
#include <stdexcept>

#include "qflat/errors.hpp"
#include "qflat/mat.hpp"

namespace qflat {

// Generator basis of the real 4D representation of the two-level dynamics.
// All three are skew-symmetric, square to -I, and close under the bracket
// [F1,F2] = 2F3, [F2,F3] = 2F1, [F3,F1] = 2F2.
inline constexpr Matrix4 kF1{{
    0, 0, 0, 1,
    0, 0, -1, 0,
    0, 1, 0, 0,
    -1, 0, 0, 0,
}};

inline constexpr Matrix4 kF2{{
    0, 0, 1, 0,
    0, 0, 0, 1,
    -1, 0, 0, 0,
    0, -1, 0, 0,
}};

inline constexpr Matrix4 kF3{{
    0, -1, 0, 0,
    1, 0, 0, 0,
    0, 0, 0, 1,
    0, 0, -1, 0,
}};

inline constexpr Matrix4 kIdentity4 = Matrix4::identity();

/// The fixed generator triple plus identity.
struct GeneratorBasis {
  Matrix4 F1 = kF1;
  Matrix4 F2 = kF2;
  Matrix4 F3 = kF3;
  Matrix4 I = kIdentity4;
};

constexpr Matrix4 commutator(const Matrix4& a, const Matrix4& b) { return a * b - b * a; }

// The algebra relations hold in exact integer arithmetic.
static_assert(commutator(kF1, kF2) == 2.0 * kF3);
static_assert(commutator(kF2, kF3) == 2.0 * kF1);
static_assert(commutator(kF3, kF1) == 2.0 * kF2);
static_assert(kF1 * kF1 == -1.0 * kIdentity4);
static_assert(kF2 * kF2 == -1.0 * kIdentity4);
static_assert(kF3 * kF3 == -1.0 * kIdentity4);
static_assert(kF1.transpose() == -1.0 * kF1);
static_assert(kF2.transpose() == -1.0 * kF2);
static_assert(kF3.transpose() == -1.0 * kF3);

/// Generator by 1-based index. Throws std::out_of_range for i outside 1..3.
constexpr const Matrix4& generator(int i) {
  switch (i) {
    case 1: return kF1;
    case 2: return kF2;
    case 3: return kF3;
    default: throw std::out_of_range("generator: index must be 1, 2 or 3");
  }
}

/// e^{g Fi} = cos(g) I + sin(g) Fi, exact because Fi^2 = -I.
inline Matrix4 exp_generator(int i, double g) {
  if (!std::isfinite(g)) throw Error("exp_generator: non-finite angle");
  return std::cos(g) * kIdentity4 + std::sin(g) * generator(i);
}

/// Base functions of the exponential-product transition matrix.
struct BaseCoordinates {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

/// Time derivatives of the base functions.
struct BaseDerivatives {
  double dg1 = 0.0;
  double dg2 = 0.0;
  double dg3 = 0.0;
};

/// Transition matrix Phi = e^{g1 F1} e^{g2 F2} e^{g3 F3}; orthogonal with
/// unit determinant for any finite base coordinates.
inline Matrix4 transition_matrix(double g1, double g2, double g3) {
  return exp_generator(1, g1) * exp_generator(2, g2) * exp_generator(3, g3);
}

inline Matrix4 transition_matrix(const BaseCoordinates& g) {
  return transition_matrix(g.g1, g.g2, g.g3);
}

}  // namespace qflat
