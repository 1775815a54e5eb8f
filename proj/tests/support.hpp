// Test-only oracles and helpers. Everything here recomputes results by an
// independent route (series, cofactors, elimination, quadrature-free
// finite differences) so the library implementations have something honest
// to be checked against.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qflat/algebra.hpp"
#include "qflat/flatness.hpp"
#include "qflat/mat.hpp"
#include "qflat/transfer.hpp"

namespace oracle {

using qflat::Matrix3;
using qflat::Matrix4;
using qflat::Vec3;
using qflat::Vec4;

/// Truncated power series for e^{g Fi}: sum_{k<terms} g^k Fi^k / k!.
inline Matrix4 series_exp_generator(int i, double g, int terms = 20) {
  const Matrix4& f = qflat::generator(i);
  Matrix4 sum = qflat::kIdentity4;
  Matrix4 term = qflat::kIdentity4;
  for (int k = 1; k < terms; ++k) {
    term = term * f;
    term *= g / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// 3x3 determinant by cofactor expansion.
inline double det3(const Matrix3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// 4x4 determinant by cofactor expansion along the first row.
inline double det4(const Matrix4& m) {
  const auto minor3 = [&](std::size_t col) {
    Matrix3 r;
    std::size_t cc = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == col) continue;
      for (std::size_t i = 1; i < 4; ++i) r(i - 1, cc) = m(i, j);
      ++cc;
    }
    return r;
  };
  double d = 0.0, sign = 1.0;
  for (std::size_t j = 0; j < 4; ++j) {
    d += sign * m(0, j) * det3(minor3(j));
    sign = -sign;
  }
  return d;
}

/// 3x3 inverse by Gauss-Jordan elimination with partial pivoting.
inline Matrix3 invert3(Matrix3 a) {
  Matrix3 inv = Matrix3::identity();
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw std::runtime_error("invert3: singular");
    if (piv != col)
      for (std::size_t j = 0; j < 3; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double scale = 1.0 / a(col, col);
    for (std::size_t j = 0; j < 3; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double factor = a(r, col);
      for (std::size_t j = 0; j < 3; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

/// One classical RK4 step for any state with + and scalar *.
template <class State, class Rhs>
State rk4_step(const State& x, double t, double h, Rhs&& f) {
  const State k1 = f(t, x);
  const State k2 = f(t + 0.5 * h, x + (0.5 * h) * k1);
  const State k3 = f(t + 0.5 * h, x + (0.5 * h) * k2);
  const State k4 = f(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

/// Bisection for a sign-changing continuous function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14, int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  if (flo * f(hi) > 0.0) throw std::runtime_error("bisect: no sign change");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double t, double h = 1e-6) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

/// Reference scenario: alpha = -2pi/3, beta = pi/3, T = 10, branch b.
inline qflat::TransferSpec reference_spec() {
  constexpr double pi = std::numbers::pi;
  return qflat::TransferSpec{-2.0 * pi / 3.0, pi / 3.0, 10.0, qflat::Branch::b};
}

inline qflat::FlatDesign reference_design() {
  const qflat::TransferSpec spec = reference_spec();
  return qflat::make_branch_b_design(qflat::boundary_targets(spec).g3_T, spec.horizon);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20260809u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

/// Random unit 4-vector.
inline Vec4 random_unit4() {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec4 x;
  double n2 = 0.0;
  do {
    for (int i = 0; i < 4; ++i) x[i] = normal(rng());
    n2 = x.norm_sq();
  } while (n2 < 1e-6);
  return x * (1.0 / std::sqrt(n2));
}

/// Random flat design meeting the b-type invariants: dg2 keeps one sign,
/// dg3 vanishes at both ends.
inline qflat::FlatDesign random_principal_design(double horizon) {
  // g2: a tau + small higher terms bounded so dg2 > 0 everywhere.
  const double a = uniform(0.5, 2.0);
  std::vector<double> g2c{0.0, a};
  double budget = 0.8 * a;
  for (int k = 2; k <= 4; ++k) {
    const double limit = budget / (3.0 * k);
    const double c = uniform(-limit, limit);
    g2c.push_back(c);
    budget -= std::abs(c) * k;
  }
  // g3: c0 = c1 = 0 and sum_k k c_k = 0 so dg3(0) = dg3(T) = 0.
  std::vector<double> g3c{0.0, 0.0};
  for (int k = 2; k <= 4; ++k) g3c.push_back(uniform(-1.0, 1.0));
  const double slope1 = 2.0 * g3c[2] + 3.0 * g3c[3] + 4.0 * g3c[4];
  g3c.push_back(-slope1 / 5.0);
  return qflat::FlatDesign{qflat::ParameterProfile::polynomial(g2c, horizon),
                           qflat::ParameterProfile::polynomial(g3c, horizon), horizon,
                           qflat::RecoveryMode::principal};
}

}  // namespace oracle
