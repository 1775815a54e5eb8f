#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qflat/algebra.hpp"
#include "support.hpp"

using namespace qflat;
constexpr double pi = std::numbers::pi;

TEST_CASE("generator entries match the fixed basis", "[algebra]") {
  CHECK(generator(1)(0, 3) == 1.0);   // row 1, col 4
  CHECK(generator(1)(3, 0) == -1.0);  // row 4, col 1
  CHECK(generator(2)(0, 2) == 1.0);
  CHECK(generator(3)(1, 0) == 1.0);  // row 2, col 1
  CHECK_THROWS_AS(generator(0), std::out_of_range);
  CHECK_THROWS_AS(generator(4), std::out_of_range);
}

TEST_CASE("generators are skew and square to -I exactly", "[algebra]") {
  for (int i = 1; i <= 3; ++i) {
    const Matrix4& f = generator(i);
    CHECK(f.transpose() == -1.0 * f);
    CHECK(f * f == -1.0 * kIdentity4);  // direct multiplication, no tolerance
  }
}

TEST_CASE("bracket table closes exactly", "[algebra]") {
  CHECK(commutator(kF1, kF2) == 2.0 * kF3);
  CHECK(commutator(kF2, kF3) == 2.0 * kF1);
  CHECK(commutator(kF3, kF1) == 2.0 * kF2);
  CHECK(commutator(kF1, kF1) == Matrix4{});
  CHECK(commutator(kF2, kF2) == Matrix4{});
}

TEST_CASE("exp_generator closed form", "[algebra]") {
  CHECK(exp_generator(2, 0.0) == kIdentity4);
  CHECK(approx_equal(exp_generator(1, pi / 2.0), kF1, 1e-12));
  CHECK_THROWS_AS(exp_generator(1, std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(exp_generator(1, std::nan("")), Error);
}

TEST_CASE("exp_generator matches the truncated power series", "[algebra]") {
  CHECK(approx_equal(exp_generator(3, 0.3), oracle::series_exp_generator(3, 0.3), 1e-12));
  for (int i = 1; i <= 3; ++i) {
    const double g = oracle::uniform(-1.0, 1.0);
    CAPTURE(i, g);
    CHECK(approx_equal(exp_generator(i, g), oracle::series_exp_generator(i, g), 1e-12));
  }
}

TEST_CASE("exp_generator is a one-parameter group", "[algebra]") {
  for (int i = 1; i <= 3; ++i)
    for (int rep = 0; rep < 20; ++rep) {
      const double a = oracle::uniform(-3.0, 3.0);
      const double b = oracle::uniform(-3.0, 3.0);
      CAPTURE(i, a, b);
      CHECK(approx_equal(exp_generator(i, a) * exp_generator(i, b), exp_generator(i, a + b),
                         1e-12));
    }
}

TEST_CASE("transition matrix of zero coordinates is the identity", "[algebra]") {
  CHECK(approx_equal(transition_matrix(0.0, 0.0, 0.0), kIdentity4, 0.0));
}

TEST_CASE("transition matrix is orthogonal with unit determinant", "[algebra]") {
  const Matrix4 phi = transition_matrix(0.4, -1.1, 2.0);
  CHECK(approx_equal(phi.transpose() * phi, kIdentity4, 1e-12));
  CHECK(std::abs(oracle::det4(phi) - 1.0) <= 1e-12);

  for (int rep = 0; rep < 30; ++rep) {
    const BaseCoordinates g{oracle::uniform(-4.0, 4.0), oracle::uniform(-4.0, 4.0),
                            oracle::uniform(-4.0, 4.0)};
    const Matrix4 p = transition_matrix(g);
    CAPTURE(g.g1, g.g2, g.g3);
    CHECK(approx_equal(p.transpose() * p, kIdentity4, 1e-12));
    CHECK(std::abs(oracle::det4(p) - 1.0) <= 1e-12);
  }
}

TEST_CASE("transition matrix preserves length of unit vectors", "[algebra]") {
  for (int rep = 0; rep < 30; ++rep) {
    const Vec4 x = oracle::random_unit4();
    const Matrix4 p = transition_matrix(oracle::uniform(-4.0, 4.0), oracle::uniform(-4.0, 4.0),
                                        oracle::uniform(-4.0, 4.0));
    CHECK(std::abs((p * x).norm() - x.norm()) <= 1e-12);
  }
}

TEST_CASE("transition matrix equals the product of its factors", "[algebra]") {
  const double g1 = 0.7, g2 = -0.3, g3 = 1.9;
  const Matrix4 product = exp_generator(1, g1) * exp_generator(2, g2) * exp_generator(3, g3);
  CHECK(transition_matrix(g1, g2, g3) == product);
}
