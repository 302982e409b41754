#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dirac/special_functions.hpp"

using dirac::special::BesselOrder;
namespace sf = dirac::special;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST(OddDoubleFactorial, SmallValues) {
  EXPECT_EQ(sf::odd_double_factorial(-1), 1.0);
  EXPECT_EQ(sf::odd_double_factorial(1), 1.0);
  EXPECT_EQ(sf::odd_double_factorial(3), 3.0);
  EXPECT_EQ(sf::odd_double_factorial(7), 105.0);
  EXPECT_EQ(sf::odd_double_factorial(9), 945.0);
}

TEST(OddDoubleFactorial, RejectsEvenAndBelowMinusOne) {
  EXPECT_THROW(sf::odd_double_factorial(2), std::invalid_argument);
  EXPECT_THROW(sf::odd_double_factorial(-3), std::invalid_argument);
}

TEST(BesselOrder, RejectsNegative) { EXPECT_THROW(BesselOrder(-1), std::invalid_argument); }

TEST(SphericalJ, MatchesStdAcrossRegimes) {
  for (int n = 0; n <= 6; ++n) {
    for (double x : {1e-6, 1e-4, 2e-4, 0.01, 0.3, 1.0, 2.5, 4.0, 7.5, 12.0, 30.0, 55.0}) {
      const double want = std::sph_bessel(n, x);
      const double got = sf::spherical_j(BesselOrder(n), x);
      // Near a zero the relative error is meaningless; compare against the envelope.
      const double scale = std::max(std::abs(want), 1e-14 * std::min(1.0, std::pow(x, n)));
      EXPECT_LT(std::abs(got - want) / scale, 1e-10) << "n=" << n << " x=" << x;
    }
  }
}

TEST(SphericalY, MatchesStd) {
  for (int n = 0; n <= 5; ++n) {
    for (double x : {1e-3, 0.05, 0.7, 3.0, 9.0, 25.0}) {
      const double want = std::sph_neumann(n, x);
      EXPECT_LT(std::abs(sf::spherical_y(BesselOrder(n), x) - want), 1e-10 * std::max(1.0, std::abs(want)))
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(ModifiedI, MatchesHalfIntegerCylinder) {
  for (int n = 0; n <= 5; ++n) {
    for (double x : {1e-5, 0.2, 1.0, 5.0, 20.0}) {
      const double want = std::sqrt(std::numbers::pi / (2.0 * x)) * std::cyl_bessel_i(n + 0.5, x);
      EXPECT_LT(rel(sf::modified_i(BesselOrder(n), x), want), 1e-11) << "n=" << n << " x=" << x;
      EXPECT_LT(rel(sf::modified_i_scaled(BesselOrder(n), x), want * std::exp(-x)), 1e-11);
    }
  }
}

TEST(ModifiedK, MatchesHalfIntegerCylinder) {
  for (int n = 0; n <= 5; ++n) {
    for (double x : {0.01, 0.3, 2.0, 7.0, 40.0}) {
      const double want = std::sqrt(std::numbers::pi / (2.0 * x)) * std::cyl_bessel_k(n + 0.5, x);
      EXPECT_LT(rel(sf::modified_k(BesselOrder(n), x), want), 1e-12) << "n=" << n << " x=" << x;
      EXPECT_LT(rel(sf::modified_k_scaled(BesselOrder(n), x), want * std::exp(x)), 1e-12);
    }
  }
}

TEST(ModifiedI, OverflowIsReported) { EXPECT_THROW(sf::modified_i(BesselOrder(0), 800.0), std::overflow_error); }

TEST(Domain, NonPositiveArgumentsRejected) {
  EXPECT_THROW(sf::spherical_j(BesselOrder(1), 0.0), std::domain_error);
  EXPECT_THROW(sf::spherical_y(BesselOrder(1), -1.0), std::domain_error);
  EXPECT_THROW(sf::modified_k(BesselOrder(0), 0.0), std::domain_error);
  EXPECT_THROW(sf::spherical_j(BesselOrder(0), std::nan("")), std::invalid_argument);
}

TEST(ReducedJ, OriginValue) {
  for (int n = 0; n <= 5; ++n) {
    EXPECT_DOUBLE_EQ(sf::reduced_j_scaled(BesselOrder(n), 0.0), 1.0 / sf::odd_double_factorial(2 * n + 1));
  }
}

TEST(ReducedJ, AgreesWithStdOnBothSides) {
  for (int n = 0; n <= 4; ++n) {
    for (double z : {0.5, 0.99, 1.01, 4.0, 30.0, 200.0}) {
      const double x = std::sqrt(z);
      const double want = std::sph_bessel(n, x) / std::pow(x, n);
      EXPECT_LT(std::abs(sf::reduced_j_scaled(BesselOrder(n), z) - want), 1e-12) << "n=" << n << " z=" << z;
    }
    for (double z : {-0.5, -0.99, -1.01, -4.0, -30.0, -400.0}) {
      const double y = std::sqrt(-z);
      const double i_n = std::sqrt(std::numbers::pi / (2.0 * y)) * std::cyl_bessel_i(n + 0.5, y);
      const double want = std::exp(-y) * i_n / std::pow(y, n);
      EXPECT_LT(rel(sf::reduced_j_scaled(BesselOrder(n), z), want), 1e-11) << "n=" << n << " z=" << z;
    }
  }
}

TEST(ReducedJ, ContinuousAcrossMethodSwitches) {
  for (int n = 0; n <= 4; ++n) {
    for (double z0 : {-1.0, 1.0}) {
      const double below = sf::reduced_j_scaled(BesselOrder(n), z0 - 1e-12);
      const double above = sf::reduced_j_scaled(BesselOrder(n), z0 + 1e-12);
      EXPECT_LT(rel(below, above), 1e-11) << "n=" << n << " z=" << z0;
    }
  }
}

TEST(Zeros, OrderZeroIsMultiplesOfPi) {
  const auto z = sf::spherical_j_zeros(BesselOrder(0), 4);
  ASSERT_EQ(z.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(z[k], (k + 1) * std::numbers::pi, 1e-12);
}

TEST(Zeros, OrderOneSolvesTanXEqualsX) {
  const auto z = sf::spherical_j_zeros(BesselOrder(1), 2);
  for (double x : z) EXPECT_NEAR(std::tan(x), x, 1e-9);
  EXPECT_NEAR(z[0], 4.493409457909064, 1e-12);
}
