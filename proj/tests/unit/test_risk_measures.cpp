#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrisk/distributions.hpp"
#include "rrisk/errors.hpp"
#include "rrisk/risk_measures.hpp"

using namespace rrisk;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PriorDistribution fair_coin() { return PriorDistribution::empirical({{0.0, 0.5}, {1.0, 0.5}}); }
PriorDistribution one_two_three() {
  const std::vector<double> v{1.0, 2.0, 3.0};
  return PriorDistribution::empirical_uniform(v);
}
PriorDistribution four_point() {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  return PriorDistribution::empirical_uniform(v);
}
PriorDistribution skewed() {
  return PriorDistribution::empirical({{-2.0, 0.1}, {0.0, 0.35}, {0.5, 0.25}, {3.0, 0.2}, {7.0, 0.1}});
}

// Standard normal second partial moments, written out independently of the
// library: E[((X - m)^+)^2] and E[((X - m)^-)^2].
double normal_upper2(double m) {
  const double pdf = std::exp(-0.5 * m * m) / std::sqrt(2.0 * std::numbers::pi);
  const double tail = 0.5 * std::erfc(m / std::numbers::sqrt2);
  return (1.0 + m * m) * tail - m * pdf;
}
double normal_lower2(double m) {
  const double pdf = std::exp(-0.5 * m * m) / std::sqrt(2.0 * std::numbers::pi);
  const double head = 0.5 * std::erfc(-m / std::numbers::sqrt2);
  return (1.0 + m * m) * head + m * pdf;
}

}  // namespace

TEST(Var, Examples) {
  EXPECT_EQ(var(four_point(), 0.5), 2.0);
  EXPECT_NEAR(var(PriorDistribution::normal(1.7, 2.0), 0.5), 1.7, 1e-12);
  EXPECT_NEAR(var(PriorDistribution::exponential(1.0), 0.9), std::log(10.0), 1e-12);
}

TEST(Expectile, Examples) {
  EXPECT_NEAR(expectile(fair_coin(), 0.75), 0.75, 1e-15);
  EXPECT_NEAR(expectile(skewed(), 0.5), mean(skewed()), 1e-14);
  EXPECT_NEAR(expectile(PriorDistribution::exponential(0.7), 0.5), 1.0 / 0.7, 1e-12);
}

TEST(Expectile, NormalGoldenFile) {
  std::ifstream in(std::string(RRISK_TEST_DATA_DIR) + "/normal_expectile_0.9.json");
  ASSERT_TRUE(in);
  const auto golden = nlohmann::json::parse(in);
  const double alpha = golden["alpha"].get<double>();
  const double v = expectile(PriorDistribution::normal(0.0, 1.0), alpha);
  EXPECT_NEAR(v, golden["grid_minimizer"].get<double>(), golden["grid_step"].get<double>());
  EXPECT_NEAR(v, std::stod(golden["precise_root"].get<std::string>()), 1e-12);
}

TEST(Expectile, AsymmetricQuadraticGridOracle) {
  const auto d = skewed();
  for (double alpha : {0.1, 0.35, 0.8}) {
    double best = kInf;
    double best_m = 0.0;
    for (double m = -2.0; m <= 7.0; m += 1e-5) {
      double v = 0.0;
      for (const auto& a : d.atoms()) {
        const double x = a.value - m;
        v += a.weight * (x > 0 ? alpha * x * x : (1 - alpha) * x * x);
      }
      if (v < best) {
        best = v;
        best_m = m;
      }
    }
    EXPECT_NEAR(expectile(d, alpha), best_m, 1e-5);
  }
}

TEST(RobustQuantile, PinballIsVar) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double delta : {1.0, 3.0}) {
      const Interval iv = robust_generalized_quantile(four_point(), LossSpec::pinball(alpha),
                                                      CostExponent(1), Penalization::linear(delta));
      EXPECT_TRUE(iv.contains(var(four_point(), alpha), 1e-9)) << alpha;
    }
  }
  const Interval median = robust_generalized_quantile(
      four_point(), LossSpec::pinball(0.5), CostExponent(1), Penalization::linear(1.0));
  EXPECT_NEAR(median.lower, 2.0, 1e-6);
  EXPECT_NEAR(median.upper, 3.0, 1e-6);
}

TEST(RobustQuantile, Examples) {
  const Interval a = robust_generalized_quantile(fair_coin(), LossSpec::asym_quadratic(0.75),
                                                 CostExponent(2), Penalization::ball(0.0));
  EXPECT_NEAR(a.lower, 0.75, 1e-6);
  EXPECT_NEAR(a.upper, 0.75, 1e-6);
  const Interval b =
      robust_generalized_quantile(PriorDistribution::point_mass(2.5), LossSpec::asym_quadratic(0.5),
                                  CostExponent(2), Penalization::linear(2.0));
  EXPECT_NEAR(b.lower, 2.5, 1e-6);
  EXPECT_NEAR(b.upper, 2.5, 1e-6);
}

TEST(RobustQuantile, LinearQuadraticAgreesWithExpectileSolver) {
  // With asym-quadratic h, p = 2 and the linear penalization the argmin is the
  // robust expectile; the generic core and the dedicated solver must agree.
  for (double alpha : {0.2, 0.75}) {
    const Interval iv = robust_generalized_quantile(skewed(), LossSpec::asym_quadratic(alpha),
                                                    CostExponent(2), Penalization::linear(1.5));
    EXPECT_NEAR(iv.midpoint(), robust_expectile_linear(skewed(), alpha, 1.5), 1e-6);
  }
}

TEST(RobustExpectileLinear, Examples) {
  EXPECT_NEAR(robust_expectile_linear(fair_coin(), 0.75, 1.0), 0.9, 1e-14);
  EXPECT_NEAR(robust_expectile_linear(one_two_three(), 0.75, 1.0), 30.0 / 11.0, 1e-14);
  for (double delta : {0.6, 2.0, 50.0}) {
    EXPECT_NEAR(robust_expectile_linear(skewed(), 0.5, delta), mean(skewed()), 1e-13);
  }
  EXPECT_THROW(robust_expectile_linear(fair_coin(), 0.75, 0.75), DeltaTooSmall);
  EXPECT_THROW(robust_expectile_linear(fair_coin(), 0.25, 0.7), DeltaTooSmall);
  EXPECT_THROW(ExpectileLevel::linear(1.0, 3.0), InvalidInput);
}

TEST(RobustExpectileLinear, AdjustedLevelAndLimit) {
  const auto d = PriorDistribution::exponential(1.3);
  for (double alpha : {0.15, 0.6, 0.9}) {
    const auto level = ExpectileLevel::linear(alpha, 2.0);
    EXPECT_GT(level.adjusted_alpha, 0.0);
    EXPECT_LT(level.adjusted_alpha, 1.0);
    EXPECT_NEAR(robust_expectile_linear(d, alpha, 2.0), expectile(d, level.adjusted_alpha), 1e-12);
    EXPECT_NEAR(robust_expectile_linear(d, alpha, 1e6), expectile(d, alpha), 1e-4);
  }
}

TEST(RobustExpectileLinear, MinimizesG1AndSolvesPsi) {
  const auto d = skewed();
  for (double alpha : {0.3, 0.85}) {
    const double delta = 1.2;
    const double v = robust_expectile_linear(d, alpha, delta);
    const auto level = ExpectileLevel::linear(alpha, delta);
    double psi = 0.0;
    for (const auto& a : d.atoms()) {
      const double x = a.value - v;
      psi += a.weight * (x > 0 ? 2 * level.upper_coefficient * x : 2 * level.lower_coefficient * x);
    }
    EXPECT_NEAR(psi, 0.0, 1e-12);
    double best = kInf;
    double best_m = 0.0;
    for (double m = -2.0; m <= 7.0; m += 1e-5) {
      const double g = g1(d, m, alpha, delta);
      if (g < best) {
        best = g;
        best_m = m;
      }
    }
    EXPECT_NEAR(v, best_m, 1e-5);
  }
}

TEST(RobustExpectile, MirrorIdentity) {
  const auto d = skewed();
  const auto neg = d.affine(-1.0, 0.0);
  for (double alpha : {0.2, 0.7}) {
    EXPECT_NEAR(robust_expectile_linear(neg, 1 - alpha, 1.5), -robust_expectile_linear(d, alpha, 1.5),
                1e-12);
    EXPECT_NEAR(robust_expectile_ball(neg, 1 - alpha, 0.4), -robust_expectile_ball(d, alpha, 0.4),
                1e-7);
  }
}

TEST(RobustExpectileBall, Reductions) {
  const auto e = PriorDistribution::exponential(1.0);
  EXPECT_EQ(robust_expectile_ball(e, 0.7, 0.0), expectile(e, 0.7));
  for (double delta : {0.1, 1.0, 5.0}) {
    EXPECT_NEAR(robust_expectile_ball(skewed(), 0.5, delta), mean(skewed()), 1e-7);
  }
  EXPECT_THROW(robust_expectile_ball(e, 0.7, -0.1), InvalidInput);
}

TEST(RobustExpectileBall, NormalGridOracle) {
  const double alpha = 0.75;
  const double delta = 0.5;
  auto inner = [&](double m, double l_lo, double l_hi, double l_step) {
    const double up = normal_upper2(m);
    const double low = normal_lower2(m);
    double best = kInf;
    for (double lambda = l_lo; lambda <= l_hi; lambda += l_step) {
      const double a = alpha * lambda / (lambda - alpha);
      const double b = (1 - alpha) * lambda / (lambda - (1 - alpha));
      best = std::min(best, a * up + b * low + delta * lambda);
    }
    return best;
  };
  auto outer = [&](double m_lo, double m_hi, double m_step) {
    double best = kInf;
    double best_m = m_lo;
    for (double m = m_lo; m <= m_hi; m += m_step) {
      const double g = inner(m, alpha + 1e-4, 10.0, 1e-4);
      if (g < best) {
        best = g;
        best_m = m;
      }
    }
    return best_m;
  };
  const double coarse = outer(0.0, 1.5, 1e-2);
  const double fine = outer(coarse - 0.02, coarse + 0.02, 1e-4);
  const auto d = PriorDistribution::normal(0.0, 1.0);
  const ExpectileSolution s = solve_robust_expectile_ball(d, alpha, delta);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.value, fine, 2e-4);
  EXPECT_GT(s.value, expectile(d, alpha));
}

TEST(RobustExpectileBall, StationarityRoute) {
  // Envelope route: dG/dlambda is dg2/dlambda at the inner expectile.
  const auto d = skewed();
  for (double alpha : {0.25, 0.8}) {
    const double delta = 0.3;
    const double top = std::max(alpha, 1 - alpha);
    auto inner_level = [&](double lambda) {
      const double a = alpha * (lambda - 1 + alpha);
      const double b = (1 - alpha) * (lambda - alpha);
      return a / (a + b);
    };
    auto slope = [&](double lambda) {
      return g2_dlambda(d, expectile(d, inner_level(lambda)), lambda, alpha, delta);
    };
    double lo = top + 1e-9;
    double hi = top + 1.0;
    while (slope(hi) < 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) < 0 ? lo : hi) = mid;
    }
    const double lambda_star = 0.5 * (lo + hi);
    const ExpectileSolution s = solve_robust_expectile_ball(d, alpha, delta);
    EXPECT_NEAR(s.value, expectile(d, inner_level(lambda_star)), 1e-6);
    EXPECT_NEAR(s.lambda, lambda_star, 1e-4 * lambda_star);
    EXPECT_NEAR(g2_dm(d, s.value, s.lambda, alpha, delta), 0.0, 1e-6);
  }
}

TEST(Partials, FiniteDifferences) {
  const auto d = PriorDistribution::normal(0.3, 1.4);
  const double h = 1e-6;
  for (double alpha : {0.3, 0.9}) {
    for (double m : {-1.0, 0.2, 1.5}) {
      const double fd1 = (g1(d, m + h, alpha, 2.0) - g1(d, m - h, alpha, 2.0)) / (2 * h);
      EXPECT_NEAR(g1_prime(d, m, alpha, 2.0), fd1, 1e-6);
      for (double lambda : {1.2, 3.0}) {
        const double fdm = (g2(d, m + h, lambda, alpha, 0.4) - g2(d, m - h, lambda, alpha, 0.4)) / (2 * h);
        const double fdl = (g2(d, m, lambda + h, alpha, 0.4) - g2(d, m, lambda - h, alpha, 0.4)) / (2 * h);
        EXPECT_NEAR(g2_dm(d, m, lambda, alpha, 0.4), fdm, 1e-6);
        EXPECT_NEAR(g2_dlambda(d, m, lambda, alpha, 0.4), fdl, 1e-6);
      }
    }
  }
}
