#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rrisk/errors.hpp"
#include "rrisk/penalizations.hpp"

using namespace rrisk;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Penalization sample_piecewise() {
  return Penalization::piecewise({{0.0, 0.5}, {1.0, 1.0}, {2.5, 3.0}});
}

}  // namespace

TEST(Conjugate, Examples) {
  EXPECT_EQ(conjugate(Penalization::linear(2.0), 1.5), 0.0);
  EXPECT_EQ(conjugate(Penalization::linear(2.0), 2.5), kInf);
  EXPECT_DOUBLE_EQ(conjugate(Penalization::ball(0.3), 4.0), 1.2);
  EXPECT_EQ(conjugate(Penalization::ball(0.0), 7.0), 0.0);
  EXPECT_THROW(conjugate(Penalization::ball(0.3), -1.0), InvalidInput);
}

TEST(Evaluate, Examples) {
  EXPECT_DOUBLE_EQ(evaluate(Penalization::linear(2.0), 3.0), 6.0);
  EXPECT_EQ(evaluate(Penalization::ball(0.3), 0.3), 0.0);
  EXPECT_EQ(evaluate(Penalization::ball(0.3), 0.31), kInf);
  EXPECT_DOUBLE_EQ(evaluate(sample_piecewise(), 2.0), 0.5 + 1.0);
  EXPECT_DOUBLE_EQ(evaluate(sample_piecewise(), 3.0), 0.5 + 1.5 + 1.5);
}

TEST(Conjugate, PiecewiseMatchesBruteForce) {
  const auto phi = sample_piecewise();
  for (double lambda : {0.0, 0.3, 0.5, 0.8, 1.0, 2.0, 3.0}) {
    double best = 0.0;
    for (double x = 0.0; x <= 50.0; x += 1e-3) best = std::max(best, x * lambda - evaluate(phi, x));
    EXPECT_NEAR(conjugate(phi, lambda), best, 1e-9) << lambda;
  }
  EXPECT_EQ(conjugate(phi, 3.01), kInf);
}

TEST(Conjugate, FenchelYoung) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const std::vector<Penalization> phis{Penalization::linear(1.7), Penalization::ball(0.4),
                                       sample_piecewise()};
  for (const auto& phi : phis) {
    for (int k = 0; k < 500; ++k) {
      const double x = u(rng);
      const double lambda = u(rng);
      const double f = evaluate(phi, x);
      const double c = conjugate(phi, lambda);
      if (std::isfinite(f) && std::isfinite(c)) EXPECT_LE(x * lambda, f + c + 1e-12);
    }
  }
}

TEST(Conjugate, Biconjugate) {
  std::vector<double> lambdas;
  for (int k = 0; k <= 500; ++k) lambdas.push_back(0.01 * k);
  for (const auto& phi : {Penalization::linear(1.7), sample_piecewise()}) {
    lambdas.push_back(conjugate_domain_upper(phi));
    for (double x = 0.0; x <= 4.0; x += 0.25) {
      double best = -kInf;
      for (double l : lambdas) {
        const double c = conjugate(phi, l);
        if (std::isfinite(c)) best = std::max(best, x * l - c);
      }
      EXPECT_NEAR(best, evaluate(phi, x), 1e-8) << phi.describe() << " x=" << x;
    }
  }
}

TEST(Conjugate, ConvexNondecreasing) {
  for (const auto& phi : {Penalization::linear(1.7), Penalization::ball(0.4), sample_piecewise()}) {
    for (double a = 0.0; a < 4.0; a += 0.1) {
      for (double b = a; b < 4.0; b += 0.3) {
        const double ca = conjugate(phi, a);
        const double cb = conjugate(phi, b);
        EXPECT_LE(ca, cb);
        const double mid = conjugate(phi, 0.5 * (a + b));
        if (std::isfinite(cb)) EXPECT_LE(mid, 0.5 * ca + 0.5 * cb + 1e-12);
      }
    }
  }
}

TEST(Penalization, Validation) {
  EXPECT_THROW(Penalization::linear(0.0), InvalidInput);
  EXPECT_THROW(Penalization::ball(-0.1), InvalidInput);
  EXPECT_NO_THROW(Penalization::ball(0.0));
  EXPECT_THROW(Penalization::piecewise({{0.0, 0.0}, {1.0, 0.0}}), InvalidInput);
  EXPECT_THROW(Penalization::piecewise({{0.0, 2.0}, {1.0, 1.0}}), InvalidInput);
  EXPECT_THROW(Penalization::piecewise({{0.5, 1.0}}), InvalidInput);
  EXPECT_THROW(evaluate(Penalization::linear(1.0), -1.0), InvalidInput);
  EXPECT_TRUE(has_zero_conjugate(Penalization::ball(0.0)));
  EXPECT_FALSE(has_zero_conjugate(Penalization::ball(0.1)));
  EXPECT_EQ(conjugate_domain_upper(Penalization::linear(2.0)), 2.0);
  EXPECT_EQ(conjugate_domain_upper(Penalization::ball(2.0)), kInf);
}
