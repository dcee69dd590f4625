#include <gtest/gtest.h>

#include <cmath>

#include "rrisk/errors.hpp"
#include "rrisk/optimize.hpp"

using namespace rrisk;

TEST(GoldenSection, Quadratic) {
  const auto r = golden_section([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; }, -5.0, 5.0);
  // A flat quadratic pins its argmin only to about sqrt(machine epsilon).
  EXPECT_NEAR(r.argmin, 1.3, 1e-7);
  EXPECT_NEAR(r.value, 2.0, 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(GoldenSection, BoundaryMinimizerIsExact) {
  const auto r = golden_section([](double x) { return 3.0 * x; }, 0.25, 4.0);
  EXPECT_EQ(r.argmin, 0.25);
  EXPECT_EQ(r.value, 0.75);
}

TEST(Bisect, ExpandsBracket) {
  const auto r = bisect_increasing([](double x) { return x - 123.5; }, 0.0, 1.0);
  EXPECT_NEAR(r.root, 123.5, 1e-9);
  EXPECT_THROW(bisect_increasing([](double) { return -1.0; }, 0.0, 1.0), NoConvergence);
}

TEST(MinimizeConvex, KinkStaysInsideInterval) {
  const auto r = minimize_convex([](double x) { return std::abs(x - 0.7); }, {-1.0, 1.0}, true);
  EXPECT_LE(r.argmin_set.lower, 0.7);
  EXPECT_GE(r.argmin_set.upper, 0.7);
  EXPECT_LT(r.argmin_set.width(), 1e-6);
}

TEST(MinimizeConvex, FlatRegionReported) {
  auto f = [](double x) { return std::max({0.0, 1.0 - x, x - 3.0}); };
  const auto r = minimize_convex(f, {10.0, 20.0}, true);
  EXPECT_NEAR(r.argmin_set.lower, 1.0, 1e-6);
  EXPECT_NEAR(r.argmin_set.upper, 3.0, 1e-6);
  EXPECT_LE(r.argmin_set.lower, 1.0);
  EXPECT_GE(r.argmin_set.upper, 3.0);
  EXPECT_EQ(r.value, 0.0);
}

TEST(MinimizeConvex, UnboundedFlatSide) {
  const auto r = minimize_convex([](double x) { return std::max(0.0, x); }, {-1.0, 1.0}, true);
  EXPECT_EQ(r.argmin_set.lower, -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(r.argmin_set.upper, 0.0, 1e-6);
}

TEST(MinimizeConvex, ConfinedSearchStaysInside) {
  const auto r = minimize_convex([](double x) { return x; }, {2.0, 5.0}, false);
  EXPECT_EQ(r.argmin, 2.0);
  EXPECT_EQ(r.argmin_set.lower, 2.0);
  EXPECT_LT(r.argmin_set.upper, 2.0 + 1e-6);
}

TEST(MinimizeConvex, UnboundedBelowThrows) {
  EXPECT_THROW(minimize_convex([](double x) { return x; }, {0.0, 1.0}, true), NoConvergence);
}
