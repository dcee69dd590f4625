#pragma once

#include "rrisk/distributions.hpp"
#include "rrisk/losses.hpp"
#include "rrisk/optimize.hpp"
#include "rrisk/penalizations.hpp"
#include "rrisk/robust_core.hpp"

namespace rrisk {

/// Lower alpha-quantile: P(X < v) <= alpha <= P(X <= v).
double var(const PriorDistribution& d, double alpha);

/// Unique root of alpha E[(X - m)^+] = (1 - alpha) E[(X - m)^-].
double expectile(const PriorDistribution& d, double alpha);

/// Coefficients of the linear-penalization expectile objective
///   g1(m) = A E[((X - m)^+)^2] + B E[((X - m)^-)^2] + const
/// with A = alpha delta / (delta - alpha), B = (1 - alpha) delta / (delta - (1 - alpha)).
struct ExpectileLevel {
  double alpha;
  double delta;
  double upper_coefficient;  // A
  double lower_coefficient;  // B
  double adjusted_alpha;     // A / (A + B)

  /// Throws DeltaTooSmall unless delta > max{alpha, 1 - alpha}.
  static ExpectileLevel linear(double alpha, double delta);
};

struct QuantileSolution {
  Interval argmin;
  double value;  // minimal robust functional
  int evaluations;
  bool converged;
};

/// Argmin interval of m -> robust_functional(d, h, p, phi, m).
Interval robust_generalized_quantile(const PriorDistribution& d, const LossSpec& h,
                                     CostExponent p, const Penalization& phi,
                                     const SearchOptions& search = {});
QuantileSolution solve_robust_generalized_quantile(const PriorDistribution& d,
                                                   const LossSpec& h, CostExponent p,
                                                   const Penalization& phi,
                                                   const SearchOptions& search = {});

struct ExpectileSolution {
  double value;
  double lambda;  // delta for the linear family, the optimal multiplier for the ball family
  int iterations;
  bool converged;
};

/// Robust expectile under phi(x) = delta x, the root of g1'(m) = 0.
double robust_expectile_linear(const PriorDistribution& d, double alpha, double delta);
ExpectileSolution solve_robust_expectile_linear(const PriorDistribution& d, double alpha,
                                                double delta);

/// Robust expectile under the ball penalization of radius delta >= 0.
double robust_expectile_ball(const PriorDistribution& d, double alpha, double delta);
ExpectileSolution solve_robust_expectile_ball(const PriorDistribution& d, double alpha,
                                              double delta);

/// g1(m) = A E[((X - m)^+)^2] + B E[((X - m)^-)^2] and its derivative in m.
double g1(const PriorDistribution& d, double m, double alpha, double delta);
double g1_prime(const PriorDistribution& d, double m, double alpha, double delta);

/// g2(m, lambda) = A(lambda) E[((X - m)^+)^2] + B(lambda) E[((X - m)^-)^2] + delta lambda
/// for lambda > max{alpha, 1 - alpha}, with its partial derivatives.
double g2(const PriorDistribution& d, double m, double lambda, double alpha, double delta);
double g2_dm(const PriorDistribution& d, double m, double lambda, double alpha, double delta);
double g2_dlambda(const PriorDistribution& d, double m, double lambda, double alpha,
                  double delta);

}  // namespace rrisk
