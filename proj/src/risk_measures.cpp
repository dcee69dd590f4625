#include "rrisk/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha", "must lie in (0, 1)");
}

// Bisection down to adjacent doubles.
const MinimizeOptions kRootOptions{0.0, 2000, 60};

double root_of_increasing(const std::function<double(double)>& g, const PriorDistribution& d) {
  const Interval b = initial_m_bracket(d);
  return bisect_increasing(g, b.lower, b.upper, kRootOptions).root;
}

// A(lambda) and B(lambda); lambda must exceed both alpha and 1 - alpha.
double coefficient(double side, double lambda) { return side * lambda / (lambda - side); }

}  // namespace

double var(const PriorDistribution& d, double alpha) {
  require_alpha(alpha);
  return quantile(d, alpha);
}

double expectile(const PriorDistribution& d, double alpha) {
  require_alpha(alpha);
  partial_moment_plus(d, 0.0, 2);  // fails fast when the second moment is undefined
  auto g = [&](double m) {
    return (1.0 - alpha) * partial_moment_minus(d, m, 1) - alpha * partial_moment_plus(d, m, 1);
  };
  return root_of_increasing(g, d);
}

ExpectileLevel ExpectileLevel::linear(double alpha, double delta) {
  require_alpha(alpha);
  if (!(delta > std::max(alpha, 1.0 - alpha))) {
    throw DeltaTooSmall("delta must exceed max{alpha, 1 - alpha} = " +
                        std::to_string(std::max(alpha, 1.0 - alpha)));
  }
  if (delta == kInf) return {alpha, delta, alpha, 1.0 - alpha, alpha};
  const double a = coefficient(alpha, delta);
  const double b = coefficient(1.0 - alpha, delta);
  return {alpha, delta, a, b, a / (a + b)};
}

QuantileSolution solve_robust_generalized_quantile(const PriorDistribution& d,
                                                   const LossSpec& h, CostExponent p,
                                                   const Penalization& phi,
                                                   const SearchOptions& search) {
  // Feasibility does not depend on m for a convex loss with finite moments;
  // probing one point surfaces Infeasible before the search starts.
  const Interval start = initial_m_bracket(d);
  solve_dual(d, h, p, phi, start.midpoint(), search);
  int inner = 0;
  auto objective = [&](double m) {
    try {
      const DualSolution s = solve_dual(d, h, p, phi, m, search);
      inner += s.evaluations;
      return s.value;
    } catch (const Infeasible&) {
      return kInf;
    }
  };
  const bool restrict = search.restrict_to_support && d.is_empirical();
  const ConvexMinimum r = minimize_convex(objective, start, !restrict, search.minimize());
  return {r.argmin_set, r.value, r.evaluations + inner, r.converged};
}

Interval robust_generalized_quantile(const PriorDistribution& d, const LossSpec& h,
                                     CostExponent p, const Penalization& phi,
                                     const SearchOptions& search) {
  return solve_robust_generalized_quantile(d, h, p, phi, search).argmin;
}

double g1(const PriorDistribution& d, double m, double alpha, double delta) {
  const ExpectileLevel level = ExpectileLevel::linear(alpha, delta);
  return level.upper_coefficient * partial_moment_plus(d, m, 2) +
         level.lower_coefficient * partial_moment_minus(d, m, 2);
}

double g1_prime(const PriorDistribution& d, double m, double alpha, double delta) {
  const ExpectileLevel level = ExpectileLevel::linear(alpha, delta);
  return -2.0 * level.upper_coefficient * partial_moment_plus(d, m, 1) +
         2.0 * level.lower_coefficient * partial_moment_minus(d, m, 1);
}

ExpectileSolution solve_robust_expectile_linear(const PriorDistribution& d, double alpha,
                                                double delta) {
  const ExpectileLevel level = ExpectileLevel::linear(alpha, delta);
  partial_moment_plus(d, 0.0, 2);
  const double a = level.upper_coefficient;
  const double b = level.lower_coefficient;
  auto g = [&](double m) {
    return -2.0 * a * partial_moment_plus(d, m, 1) + 2.0 * b * partial_moment_minus(d, m, 1);
  };
  const Interval bracket = initial_m_bracket(d);
  const RootResult r = bisect_increasing(g, bracket.lower, bracket.upper, kRootOptions);
  return {r.root, delta, r.iterations, r.converged};
}

double robust_expectile_linear(const PriorDistribution& d, double alpha, double delta) {
  return solve_robust_expectile_linear(d, alpha, delta).value;
}

double g2(const PriorDistribution& d, double m, double lambda, double alpha, double delta) {
  const double thr = std::max(alpha, 1.0 - alpha);
  if (!(lambda > thr)) return kInf;
  return coefficient(alpha, lambda) * partial_moment_plus(d, m, 2) +
         coefficient(1.0 - alpha, lambda) * partial_moment_minus(d, m, 2) + delta * lambda;
}

double g2_dm(const PriorDistribution& d, double m, double lambda, double alpha, double delta) {
  (void)delta;
  return -2.0 * coefficient(alpha, lambda) * partial_moment_plus(d, m, 1) +
         2.0 * coefficient(1.0 - alpha, lambda) * partial_moment_minus(d, m, 1);
}

double g2_dlambda(const PriorDistribution& d, double m, double lambda, double alpha,
                  double delta) {
  const double u = alpha / (lambda - alpha);
  const double v = (1.0 - alpha) / (lambda - (1.0 - alpha));
  return -u * u * partial_moment_plus(d, m, 2) - v * v * partial_moment_minus(d, m, 2) + delta;
}

ExpectileSolution solve_robust_expectile_ball(const PriorDistribution& d, double alpha,
                                              double delta) {
  require_alpha(alpha);
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InvalidInput("delta", "must be nonnegative");
  }
  if (delta == 0.0) return {expectile(d, alpha), kInf, 0, true};
  partial_moment_plus(d, 0.0, 2);

  // Reduced objective G(lambda) = min_m g2(m, lambda). The inner minimizer is
  // the expectile at alpha~(lambda) = A / (A + B); A + B is kept as a scale
  // factor so that alpha~ stays well conditioned near the threshold.
  const double thr = std::max(alpha, 1.0 - alpha);
  auto adjusted = [&](double lambda) {
    const double u = alpha * (lambda - (1.0 - alpha));
    const double w = (1.0 - alpha) * (lambda - alpha);
    return u / (u + w);
  };
  auto reduced = [&](double lambda) {
    const double level = adjusted(lambda);
    const double m = expectile(d, level);
    const double scale = coefficient(alpha, lambda) + coefficient(1.0 - alpha, lambda);
    return scale * (level * partial_moment_plus(d, m, 2) +
                    (1.0 - level) * partial_moment_minus(d, m, 2)) +
           delta * lambda;
  };

  const MinimizeOptions opts{1e-9, 200, 60};
  const double lo = thr + 1e-8;
  double hi = lo + 1.0;
  int doublings = 0;
  for (;;) {
    const double h = 1e-6 * std::max(1.0, hi);
    if (reduced(hi + h) - reduced(hi) > 0.0) break;
    if (++doublings > opts.max_doublings) {
      throw NoConvergence("lambda bracket expansion exceeded doubling limit");
    }
    hi = lo + 2.0 * (hi - lo);
  }
  const ScalarMinimum best = golden_section(reduced, lo, hi, opts);
  return {expectile(d, adjusted(best.argmin)), best.argmin, best.evaluations, best.converged};
}

double robust_expectile_ball(const PriorDistribution& d, double alpha, double delta) {
  return solve_robust_expectile_ball(d, alpha, delta).value;
}

}  // namespace rrisk
