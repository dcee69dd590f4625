#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rrisk/distributions.hpp"
#include "rrisk/errors.hpp"
#include "rrisk/robust_core.hpp"

using namespace rrisk;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PriorDistribution fair_coin() { return PriorDistribution::empirical({{0.0, 0.5}, {1.0, 0.5}}); }

LossSpec one_plus_kink() {
  return LossSpec::custom([](double x) { return 1.0 + std::max(x, 0.0); }, 1.0, 1.0);
}

// Dual objective on a lambda grid, using the numeric transform as the
// independent route for every atom.
double lambda_grid_dual(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                        const Penalization& phi, double m, double lo, double hi, double step) {
  double best = kInf;
  for (double lambda = lo; lambda <= hi + 1e-12; lambda += step) {
    const double c = conjugate(phi, lambda);
    if (!std::isfinite(c)) continue;
    double e = 0.0;
    for (const auto& a : d.atoms()) e += a.weight * numeric_lambda_c_transform(l, p, lambda, a.value - m);
    best = std::min(best, e + c);
  }
  return best;
}

}  // namespace

TEST(RobustFunctional, PinballLinearExample) {
  const auto h = LossSpec::pinball(0.3);
  const auto phi = Penalization::linear(2.0);
  EXPECT_NEAR(robust_functional(fair_coin(), h, CostExponent(1), phi, 0.0), 0.15, 1e-12);
  EXPECT_NEAR(lambda_grid_dual(fair_coin(), h, CostExponent(1), phi, 0.0, 0.0, 2.0, 0.01), 0.15,
              1e-6);
}

TEST(RobustFunctional, ZeroBallIsPlainExpectation) {
  const auto d = PriorDistribution::normal(0.0, 1.0);
  const auto l = LossSpec::asym_quadratic(0.5);
  const double v = robust_functional(d, l, CostExponent(2), Penalization::ball(0.0), 0.0);
  EXPECT_NEAR(v, 0.5, 1e-12);
  const auto xs = sample(d, 2'000'000, 99);
  double acc = 0.0;
  double acc2 = 0.0;
  for (double x : xs) {
    acc += l(x);
    acc2 += l(x) * l(x);
  }
  const double mc = acc / xs.size();
  const double se = std::sqrt((acc2 / xs.size() - mc * mc) / xs.size());
  EXPECT_NEAR(v, mc, 4.0 * se);
}

TEST(RobustFunctional, InfeasibleDomain) {
  EXPECT_THROW(robust_functional(fair_coin(), LossSpec::pinball(0.5), CostExponent(1),
                                 Penalization::linear(0.2), 0.0),
               Infeasible);
}

TEST(RobustFunctional, BallMatchesLambdaGrid) {
  const auto d = PriorDistribution::empirical({{-1.0, 0.2}, {0.5, 0.5}, {2.0, 0.3}});
  const auto l = LossSpec::asym_quadratic(0.7);
  const auto phi = Penalization::ball(0.4);
  for (double m : {-0.5, 0.3, 1.0}) {
    const double v = robust_functional(d, l, CostExponent(2), phi, m);
    const double grid = lambda_grid_dual(d, l, CostExponent(2), phi, m, 0.71, 8.0, 0.01);
    EXPECT_LE(v, grid + 1e-9);
    EXPECT_NEAR(v, grid, 2e-3);
  }
}

TEST(SolveDual, ObjectiveIsConvexInLambda) {
  const auto d = PriorDistribution::normal(0.2, 1.1);
  const auto l = LossSpec::asym_quadratic(0.8);
  const auto phi = Penalization::ball(0.3);
  const double m = 0.4;
  auto obj = [&](double lambda) {
    return expected_transform(d, l, CostExponent(2), lambda, m) + conjugate(phi, lambda);
  };
  for (double a = 0.85; a < 6.0; a += 0.37) {
    for (double b = a + 0.2; b < 7.0; b += 0.61) {
      EXPECT_LE(obj(0.5 * (a + b)), 0.5 * obj(a) + 0.5 * obj(b) + 1e-12);
    }
  }
  const DualSolution s = solve_dual(d, l, CostExponent(2), phi, m);
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.value, obj(s.lambda * 1.01) + 1e-12);
  EXPECT_LE(s.value, obj(s.lambda * 0.99) + 1e-12);
}

TEST(SolveDual, ZeroConjugateIsLambdaLimit) {
  const DualSolution s =
      solve_dual(fair_coin(), LossSpec::asym_quadratic(0.4), CostExponent(2), Penalization::ball(0.0), 0.5);
  EXPECT_EQ(s.lambda, kInf);
  EXPECT_NEAR(s.value, 0.5 * (0.6 * 0.25) + 0.5 * (0.4 * 0.25), 1e-15);
}

TEST(SolveDual, LinearBoundaryFlag) {
  // Pinball with p = 1 is constant in lambda above the threshold, so the
  // linear conjugate is minimized anywhere in [max{a, 1-a}, delta].
  const DualSolution s =
      solve_dual(fair_coin(), LossSpec::pinball(0.3), CostExponent(1), Penalization::linear(2.0), 0.0);
  EXPECT_GE(s.lambda, 0.7 - 1e-12);
  EXPECT_LE(s.lambda, 2.0 + 1e-12);
}

TEST(RobustOce, ZeroPositionValueIsOne) {
  const RobustValue r = robust_oce(PriorDistribution::point_mass(0.0), one_plus_kink(),
                                   CostExponent(1), Penalization::linear(2.0));
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  SearchOptions restricted;
  restricted.restrict_to_support = true;
  EXPECT_NEAR(robust_oce(PriorDistribution::point_mass(0.0), one_plus_kink(), CostExponent(1),
                         Penalization::linear(2.0), restricted)
                  .value,
              1.0, 1e-9);
}

TEST(RobustOce, PointMassPinball) {
  SearchOptions restricted;
  restricted.restrict_to_support = true;
  for (double c : {-2.5, 0.0, 3.25}) {
    for (double alpha : {0.2, 0.5, 0.9}) {
      const auto d = PriorDistribution::point_mass(c);
      const RobustValue r = robust_oce(d, LossSpec::pinball(alpha), CostExponent(1),
                                       Penalization::linear(1.0), restricted);
      EXPECT_NEAR(r.value, c, 1e-9);
      // Without the support restriction m + h(c - m) decreases without bound.
      EXPECT_THROW(robust_oce(d, LossSpec::pinball(alpha), CostExponent(1),
                              Penalization::linear(1.0)),
                   NoConvergence);
    }
  }
}

TEST(RobustOce, TwoPointPinballMatchesGridOracle) {
  SearchOptions restricted;
  restricted.restrict_to_support = true;
  const auto h = LossSpec::pinball(0.5);
  const auto phi = Penalization::linear(1.0);
  const RobustValue r = robust_oce(fair_coin(), h, CostExponent(1), phi, restricted);
  const RobustValue c = classical_oce(fair_coin(), h, restricted);

  // Two-level grid over (m, lambda): coarse, then 1e-4 around the coarse winner.
  auto grid_min = [&](double m_lo, double m_hi, double m_step, double l_step) {
    double best = kInf;
    double best_m = m_lo;
    for (double m = m_lo; m <= m_hi + 1e-12; m += m_step) {
      double inner = kInf;
      for (double lambda = 0.5; lambda <= 1.0 + 1e-12; lambda += l_step) {
        double e = 0.0;
        for (const auto& a : fair_coin().atoms()) {
          e += a.weight * lambda_c_transform(h, CostExponent(1), lambda, a.value - m);
        }
        inner = std::min(inner, e + conjugate(phi, lambda));
      }
      if (m + inner < best) {
        best = m + inner;
        best_m = m;
      }
    }
    return std::pair{best, best_m};
  };
  const auto [coarse, coarse_m] = grid_min(0.0, 1.0, 1e-2, 1e-2);
  const auto [fine, fine_m] =
      grid_min(std::max(0.0, coarse_m - 0.02), std::min(1.0, coarse_m + 0.02), 1e-4, 1e-4);
  EXPECT_LE(fine, coarse);
  EXPECT_NEAR(r.value, fine, 1e-4);
  EXPECT_NEAR(r.value, c.value, 1e-9);
  EXPECT_NEAR(r.value, 0.25, 1e-9);
  EXPECT_TRUE(r.argmin_m.contains(fine_m, 1e-3));
}

TEST(ClassicalOce, TwoPointAsymQuadratic) {
  // Objective m + (m^2 + (1 - m)^2) / 4 is minimized at m = -1/2.
  const RobustValue r = classical_oce(fair_coin(), LossSpec::asym_quadratic(0.5));
  double best = kInf;
  double best_m = 0.0;
  for (double m = -2.0; m <= 2.0; m += 1e-6) {
    const double v = m + 0.25 * (m * m + (1 - m) * (1 - m));
    if (v < best) {
      best = v;
      best_m = m;
    }
  }
  EXPECT_NEAR(r.value, best, 1e-9);
  EXPECT_NEAR(r.value, 0.125, 1e-12);
  EXPECT_TRUE(r.argmin_m.contains(best_m, 1e-5));
}

TEST(ClassicalOce, NormalArgmin) {
  // m + (1 + m^2) / 2 has its minimum 0 at m = -1.
  const RobustValue r =
      classical_oce(PriorDistribution::normal(0.0, 1.0), LossSpec::asym_quadratic(0.5));
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.argmin_m.midpoint(), -1.0, 1e-6);
}

TEST(ClassicalOce, PointMass) {
  SearchOptions restricted;
  restricted.restrict_to_support = true;
  EXPECT_NEAR(classical_oce(PriorDistribution::point_mass(4.0), LossSpec::pinball(0.3), restricted)
                  .value,
              4.0, 1e-12);
}

TEST(RobustOce, GrowsWithBallRadius) {
  const auto d = PriorDistribution::empirical({{-1.0, 0.3}, {0.0, 0.3}, {2.0, 0.4}});
  const auto l = LossSpec::asym_quadratic(0.7);
  const double classical = classical_oce(d, l).value;
  double previous = classical;
  for (double delta : {0.0, 0.05, 0.2, 0.8, 2.0}) {
    const double v = robust_oce(d, l, CostExponent(2), Penalization::ball(delta)).value;
    EXPECT_GE(v, previous - 1e-9) << delta;
    previous = v;
  }
}
