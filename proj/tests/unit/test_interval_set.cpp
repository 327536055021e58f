#include <numbers>

#include <gtest/gtest.h>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/interval_set.hpp"

using arcmarkov::IntervalSet;
constexpr double kPi = std::numbers::pi;

TEST(IntervalSet, RejectsBadInput) {
  EXPECT_THROW(IntervalSet({{1.0, 0.0}}), arcmarkov::Error);
  EXPECT_THROW(IntervalSet({{0.0, 1.0}, {0.5, 2.0}}), arcmarkov::Error);
  EXPECT_THROW(IntervalSet({{-4.0, 0.0}}), arcmarkov::Error);
  EXPECT_THROW(IntervalSet({{0.5, 1.0}, {0.0, 0.2}}), arcmarkov::Error);
}

TEST(IntervalSet, Queries) {
  const IntervalSet E({{-2.0, -1.0}, {0.5, 2.5}});
  EXPECT_DOUBLE_EQ(E.measure(), 3.0);
  EXPECT_TRUE(E.contains(-1.5));
  EXPECT_FALSE(E.contains(0.0));
  EXPECT_EQ(E.component_of(1.0), 1);
  EXPECT_EQ(E.component_of(0.0), -1);
  EXPECT_DOUBLE_EQ(E.distance_to_boundary(1.0), 0.5);
  EXPECT_TRUE(IntervalSet({{0.6, 1.0}}).subset_of(E));
}

TEST(IntervalSet, IntervalCondition) {
  const IntervalSet E({{-2.0, -1.0}, {0.5, 2.5}});
  // right endpoint -1: component length 1, gap to 0.5 is 1.5
  EXPECT_DOUBLE_EQ(E.max_rho(-1.0), 0.5);
  EXPECT_TRUE(E.satisfies_interval_condition(-1.0, 0.5));
  EXPECT_FALSE(E.satisfies_interval_condition(-1.0, 0.51));
  // the gap after 2.5 wraps to -2 + 2 pi
  EXPECT_NEAR(E.max_rho(2.5), 0.5 * std::min(2.0, -2.0 + 2 * kPi - 2.5), 1e-15);
  EXPECT_EQ(E.max_rho(0.5), 0.0);  // left endpoints do not qualify
  EXPECT_FALSE(E.satisfies_interval_condition(0.0, 0.1));
}
