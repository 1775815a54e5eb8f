#pragma once

#include <cmath>

#include "qflat/algebra.hpp"
#include "qflat/errors.hpp"
#include "qflat/mat.hpp"

namespace qflat {

/// Default threshold on |cos 2g2| below which the coefficient matrix is
/// treated as singular.
inline constexpr double kSingularityEps = 1e-10;

/// The 3x3 coefficient matrix; named apart from the 2x2 D block of the
/// transition matrix.
using WNMatrix = Matrix3;

/// Coefficient matrix of the base-function equation
///   D(g1, g2) [dg1 dg2 dg3]^T = [u1 u2 0]^T,
/// with det D = cos(2 g2). Rows correspond to the F1, F2, F3 coefficients
/// of the transition-matrix derivative.
inline WNMatrix wn_matrix(double g1, double g2) {
  const double s1 = std::sin(2.0 * g1), c1 = std::cos(2.0 * g1);
  const double s2 = std::sin(2.0 * g2), c2 = std::cos(2.0 * g2);
  return WNMatrix{{
      1.0, 0.0, s2,
      0.0, c1, -c2 * s1,
      0.0, s1, c2 * c1,
  }};
}

/// Explicit inverse of wn_matrix, scaled by 1/cos(2 g2).
/// Throws SingularCoordinates when |cos 2g2| <= eps.
inline WNMatrix wn_inverse(double g1, double g2, double eps = kSingularityEps) {
  const double c2 = std::cos(2.0 * g2);
  if (std::abs(c2) <= eps)
    throw SingularCoordinates("wn_inverse: cos(2 g2) vanishes at g2 = " + std::to_string(g2));
  const double s1 = std::sin(2.0 * g1), c1 = std::cos(2.0 * g1);
  const double s2 = std::sin(2.0 * g2);
  const double inv = 1.0 / c2;
  return WNMatrix{{
      1.0, s1 * s2 * inv, -c1 * s2 * inv,
      0.0, c1, s1,
      0.0, -s1 * inv, c1 * inv,
  }};
}

/// Right-hand side of the base-function ODE: the derivative triple produced
/// by controls (u1, u2) at coordinates g. This is the inverse route used by
/// recovery oracles; the forward synthesis never inverts the matrix.
inline BaseDerivatives gdot_from_controls(const BaseCoordinates& g, double u1, double u2,
                                          double eps = kSingularityEps) {
  const WNMatrix inv = wn_inverse(g.g1, g.g2, eps);
  const Vec3 gdot = inv * Vec3{{u1, u2, 0.0}};
  return BaseDerivatives{gdot[0], gdot[1], gdot[2]};
}

/// Coefficients of F1, F2, F3 in the derivative of the exponential product,
/// from the adjoint-action expansion:
///   f1 = dg1 + dg3 sin(2g2)
///   f2 = dg2 cos(2g1) - dg3 cos(2g2) sin(2g1)
///   f3 = dg2 sin(2g1) + dg3 cos(2g2) cos(2g1)
/// Equal to wn_matrix(g1,g2) * (dg1, dg2, dg3).
struct WNCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

inline WNCoefficients cbh_coefficients(const BaseCoordinates& g, const BaseDerivatives& dg) {
  const double s1 = std::sin(2.0 * g.g1), c1 = std::cos(2.0 * g.g1);
  const double s2 = std::sin(2.0 * g.g2), c2 = std::cos(2.0 * g.g2);
  return WNCoefficients{
      dg.dg1 + dg.dg3 * s2,
      dg.dg2 * c1 - dg.dg3 * c2 * s1,
      dg.dg2 * s1 + dg.dg3 * c2 * c1,
  };
}

}  // namespace qflat
