#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qflat {

/// Fixed-size real vector. Aggregate; value-initializes to zero.
template <std::size_t N>
struct Vector {
  std::array<double, N> v{};

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr const double& operator[](std::size_t i) const { return v[i]; }

  constexpr Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr Vector& operator*=(double s) {
    for (double& x : v) x *= s;
    return *this;
  }

  friend constexpr Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend constexpr Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend constexpr Vector operator*(double s, Vector a) { return a *= s; }
  friend constexpr Vector operator*(Vector a, double s) { return a *= s; }

  friend constexpr bool operator==(const Vector& a, const Vector& b) { return a.v == b.v; }

  constexpr double dot(const Vector& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += v[i] * o.v[i];
    return s;
  }
  constexpr double norm_sq() const { return dot(*this); }
  double norm() const { return std::sqrt(norm_sq()); }
  constexpr double inf_norm() const {
    double m = 0.0;
    for (double x : v) {
      const double a = x < 0 ? -x : x;
      if (a > m) m = a;
    }
    return m;
  }
  constexpr bool all_finite() const {
    for (double x : v)
      if (!(x - x == 0.0)) return false;  // NaN and Inf both fail
    return true;
  }
};

/// Fixed-size square matrix, row-major. Aggregate; value-initializes to zero.
template <std::size_t N>
struct Matrix {
  std::array<double, N * N> m{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  constexpr const double& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static constexpr Matrix identity() {
    Matrix I;
    for (std::size_t i = 0; i < N; ++i) I(i, i) = 1.0;
    return I;
  }

  constexpr Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) m[i] += o.m[i];
    return *this;
  }
  constexpr Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) m[i] -= o.m[i];
    return *this;
  }
  constexpr Matrix& operator*=(double s) {
    for (double& x : m) x *= s;
    return *this;
  }

  friend constexpr Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend constexpr Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend constexpr Matrix operator*(double s, Matrix a) { return a *= s; }
  friend constexpr Matrix operator*(Matrix a, double s) { return a *= s; }

  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend constexpr Vector<N> operator*(const Matrix& a, const Vector<N>& x) {
    Vector<N> r;
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += a(i, j) * x[j];
      r[i] = s;
    }
    return r;
  }

  friend constexpr bool operator==(const Matrix& a, const Matrix& b) { return a.m == b.m; }

  constexpr Matrix transpose() const {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Largest absolute entry.
  constexpr double max_abs() const {
    double r = 0.0;
    for (double x : m) {
      const double a = x < 0 ? -x : x;
      if (a > r) r = a;
    }
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
  }

  constexpr bool all_finite() const {
    for (double x : m)
      if (!(x - x == 0.0)) return false;
    return true;
  }
};

using Vec3 = Vector<3>;
using Vec4 = Vector<4>;
using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;
using Matrix4 = Matrix<4>;

/// Entrywise comparison with absolute tolerance.
template <std::size_t N>
constexpr bool approx_equal(const Matrix<N>& a, const Matrix<N>& b, double tol = 1e-12) {
  return (a - b).max_abs() <= tol;
}

template <std::size_t N>
constexpr bool approx_equal(const Vector<N>& a, const Vector<N>& b, double tol = 1e-12) {
  return (a - b).inf_norm() <= tol;
}

}  // namespace qflat
