#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/errors.hpp"

using namespace arcmarkov::equilibrium;
constexpr double kPi = std::numbers::pi;

TEST(ArcSystem, Validation) {
  EXPECT_THROW(ArcSystem({0.5, 0.2}), arcmarkov::Error);
  EXPECT_THROW(ArcSystem({-4.0, 0.0}), arcmarkov::Error);
  EXPECT_THROW(ArcSystem({0.0, 1.0, 2.0}), arcmarkov::Error);
  const ArcSystem a({-2.0, -0.5, 0.3, 1.9});
  EXPECT_EQ(a.m(), 2);
  EXPECT_NEAR(a.gap(1).hi, -2.0 + 2 * kPi, 1e-15);
  EXPECT_EQ(a.open_arc_of(1.0), 1);
  EXPECT_EQ(a.open_arc_of(0.0), -1);
  EXPECT_EQ(a.endpoint_index(0.3), 2);
}

TEST(SolveTau, SingleArcGapZeroIsPi) {
  for (double th : {0.3, 1.0, 2.5}) {
    const auto eq = solve_tau(ArcSystem({-th, th}));
    ASSERT_EQ(eq.tau().size(), 1u);
    EXPECT_NEAR(eq.tau()[0], kPi, 1e-9);
    EXPECT_LT(eq.max_residual(), 1e-10);
  }
}

TEST(SolveTau, SymmetricPair) {
  const auto eq = solve_tau(ArcSystem({-2.5, -0.8, 0.8, 2.5}));
  EXPECT_NEAR(eq.tau()[0], 0.0, 1e-9);
  EXPECT_NEAR(eq.tau()[1], kPi, 1e-9);
  EXPECT_LT(eq.max_residual(), 1e-10);
  EXPECT_NEAR(eq.arc_mass(0), 0.5, 1e-8);
}

TEST(Density, SingleArcValues) {
  const double th = kPi / 2;
  const auto eq = solve_tau(ArcSystem({-th, th}));
  EXPECT_NEAR(eq.density(0.0), std::sqrt(2.0) / (2 * kPi), 1e-12);
  EXPECT_NEAR(eq.total_mass(), 1.0, 1e-8);
  for (double t : {-1.2, -0.4, 0.1, 0.9, 1.5}) {
    const double s = std::sin(th / 2), u = std::sin(t / 2);
    EXPECT_NEAR(eq.density(t), std::cos(t / 2) / (2 * kPi * std::sqrt(s * s - u * u)), 1e-10);
    EXPECT_NEAR(eq.density(t), eq.density(-t), 1e-12);
  }
  EXPECT_THROW(eq.density(2.0), arcmarkov::Error);
}

TEST(Omega, SingleArcClosedForm) {
  for (double th : {kPi / 6, kPi / 2, 2.5}) {
    const auto f = omega_endpoint(solve_tau(ArcSystem({-th, th})), th);
    const double want = std::sqrt(1.0 / std::tan(th / 2)) / (2 * kPi);
    EXPECT_NEAR(f.omega, want, 1e-10);
    EXPECT_NEAR(f.markov_M, 1.0 / std::tan(th / 2), 1e-9);
    EXPECT_NEAR(f.omega_limit, want, 1e-6);
  }
  EXPECT_NEAR(omega_endpoint(solve_tau(ArcSystem({-kPi / 2, kPi / 2})), kPi / 2).omega,
              0.1591549430918953, 1e-12);
}

TEST(Omega, NonEndpointIsOutOfRange) {
  const auto eq = solve_tau(ArcSystem({-1.0, 1.0}));
  EXPECT_THROW(omega_endpoint(eq, 0.5), arcmarkov::Error);
}

// Enlarging the set can only lower the endpoint factor.
TEST(Omega, MonotoneInTheSet) {
  double prev = 1e300;
  for (double th = 0.4; th < 3.0; th += 0.3) {
    const double w = omega_endpoint(solve_tau(ArcSystem({-th, th})), th).omega;
    EXPECT_LE(w, prev);
    prev = w;
  }
}

TEST(Mass, GenericTwoArcs) {
  const auto eq = solve_tau(ArcSystem({-2.0, -0.5, 0.3, 1.9}));
  EXPECT_LT(eq.max_residual(), 1e-10);
  EXPECT_NEAR(eq.total_mass(), 1.0, 1e-8);
  EXPECT_GT(eq.tau()[0], -0.5);
  EXPECT_LT(eq.tau()[0], 0.3);
}
