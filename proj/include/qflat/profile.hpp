#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qflat/errors.hpp"

namespace qflat {

enum class ProfileKind { linear, cubic_hermite, polynomial };

/// Smooth scalar function on [0, T], stored as monomial coefficients in the
/// normalized time tau = t/T. Evaluable for value and first two derivatives
/// anywhere on the horizon.
class ParameterProfile {
 public:
  ParameterProfile() = default;

  static ParameterProfile linear(double v0, double v1, double horizon) {
    return ParameterProfile(ProfileKind::linear, {v0, v1 - v0}, horizon);
  }

  /// Cubic with prescribed endpoint values and endpoint slopes (slopes in
  /// d/dt units).
  static ParameterProfile cubic_hermite(double v0, double v1, double s0, double s1,
                                        double horizon) {
    const double a = s0 * horizon, b = s1 * horizon;  // slopes in d/dtau
    return ParameterProfile(ProfileKind::cubic_hermite,
                            {v0, a, -3.0 * v0 + 3.0 * v1 - 2.0 * a - b,
                             2.0 * v0 - 2.0 * v1 + a + b},
                            horizon);
  }

  /// p(t) = sum_k c[k] (t/T)^k.
  static ParameterProfile polynomial(std::vector<double> coeffs, double horizon) {
    return ParameterProfile(ProfileKind::polynomial, std::move(coeffs), horizon);
  }

  ProfileKind kind() const { return kind_; }
  double horizon() const { return horizon_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double value(double t) const {
    const double tau = t / horizon_;
    double r = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * tau + coeffs_[k];
    return r;
  }

  double deriv(double t) const {
    const double tau = t / horizon_;
    double r = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) r = r * tau + static_cast<double>(k) * coeffs_[k];
    return r / horizon_;
  }

  double second_deriv(double t) const {
    const double tau = t / horizon_;
    double r = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 2;)
      r = r * tau + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs_[k];
    return r / (horizon_ * horizon_);
  }

 private:
  ParameterProfile(ProfileKind kind, std::vector<double> coeffs, double horizon)
      : kind_(kind), coeffs_(std::move(coeffs)), horizon_(horizon) {
    if (!(horizon_ > 0.0)) throw Error("ParameterProfile: horizon must be positive");
    for (double c : coeffs_)
      if (!std::isfinite(c)) throw Error("ParameterProfile: non-finite coefficient");
  }

  ProfileKind kind_ = ProfileKind::polynomial;
  std::vector<double> coeffs_;
  double horizon_ = 1.0;
};

}  // namespace qflat
