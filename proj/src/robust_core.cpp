#include "rrisk/robust_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Closed-form path for two-sided power losses whose exponents lie in {1, 2}.
bool partial_moment_form(const LossSpec& l, LossSpec::TwoSided& t) {
  const auto two = l.two_sided();
  if (!two) return false;
  auto ok = [](double c, double k) { return c == 0.0 || k == 1.0 || k == 2.0; };
  if (!ok(two->upper_coefficient, two->upper_exponent) ||
      !ok(two->lower_coefficient, two->lower_exponent)) {
    return false;
  }
  t = *two;
  return true;
}

double side_moment(const PriorDistribution& d, double m, double coefficient, double exponent,
                   bool upper) {
  if (coefficient == 0.0) return 0.0;
  const int k = static_cast<int>(exponent);
  return coefficient * (upper ? partial_moment_plus(d, m, k) : partial_moment_minus(d, m, k));
}

// coefficient * E[(side)^p], where an infinite coefficient only counts when
// the side has positive probability.
double scaled_side(const PriorDistribution& d, double m, double coefficient, int power,
                   bool upper) {
  if (coefficient == 0.0) return 0.0;
  if (coefficient == kInf) {
    bool charged;
    if (d.is_empirical()) {
      const auto atoms = d.atoms();
      charged = upper ? atoms.back().value > m : atoms.front().value < m;
    } else {
      charged = (upper ? 1.0 - cdf(d, m) : cdf_left(d, m)) > 0.0;
    }
    return charged ? kInf : 0.0;
  }
  return coefficient * (upper ? partial_moment_plus(d, m, power) : partial_moment_minus(d, m, power));
}

double quadratic_coefficient(double s, double lambda) {
  if (s == 0.0) return 0.0;
  return lambda > s ? s * lambda / (lambda - s) : kInf;
}

}  // namespace

Interval initial_m_bracket(const PriorDistribution& d) {
  if (d.is_empirical()) {
    const auto atoms = d.atoms();
    return {atoms.front().value, atoms.back().value};
  }
  const double mu = mean(d);
  const double s = spread(d);
  return {mu - s, mu + s};
}

double expected_loss(const PriorDistribution& d, const LossSpec& l, double m) {
  LossSpec::TwoSided t{};
  if (partial_moment_form(l, t)) {
    return side_moment(d, m, t.upper_coefficient, t.upper_exponent, true) +
           side_moment(d, m, t.lower_coefficient, t.lower_exponent, false);
  }
  return expectation(d, [&](double x) { return l(x - m); });
}

double expected_transform(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                          double lambda, double m) {
  if (!(lambda >= 0.0)) throw InvalidInput("lambda", "must be nonnegative");
  if (has_closed_form_transform(l, p)) {
    const auto t = *l.two_sided();
    const double a = t.upper_coefficient;
    const double b = t.lower_coefficient;
    const double top = std::max(a, b);
    if (lambda < top) return kInf;
    if (p.p == 1.0) return scaled_side(d, m, a, 1, true) + scaled_side(d, m, b, 1, false);
    if (lambda == top && a == b) return kInf;
    return scaled_side(d, m, quadratic_coefficient(a, lambda), 2, true) +
           scaled_side(d, m, quadratic_coefficient(b, lambda), 2, false);
  }
  return expectation(d, [&](double x) { return lambda_c_transform(l, p, lambda, x - m); });
}

DualSolution solve_dual(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                        const Penalization& phi, double m, const SearchOptions& search) {
  if (has_zero_conjugate(phi)) {
    // phi* = 0 and the transform decreases to l as lambda grows, so the
    // infimum is the lambda -> inf limit.
    return {expected_loss(d, l, m), kInf, 1, true, true};
  }
  const double threshold = finiteness_threshold(l, p);
  const double upper = conjugate_domain_upper(phi);
  if (upper < threshold) {
    throw Infeasible("conjugate domain [0, " + std::to_string(upper) +
                     "] lies below the transform threshold " + std::to_string(threshold));
  }

  int evaluations = 0;
  auto objective = [&](double lambda) {
    ++evaluations;
    const double c = conjugate(phi, lambda);
    if (c == kInf) return kInf;
    const double e = expected_transform(d, l, p, lambda, m);
    return e == kInf ? kInf : e + c;
  };

  const MinimizeOptions opts = search.minimize();
  double hi = upper;
  if (!std::isfinite(hi)) {
    // Double the bracket until the objective stops decreasing; convexity
    // then puts the minimizer below hi.
    double previous = objective(threshold + 1.0);
    hi = threshold + 1.0;
    int doublings = 0;
    for (;;) {
      if (++doublings > opts.max_doublings) {
        throw NoConvergence("lambda bracket expansion exceeded doubling limit");
      }
      const double next_hi = threshold + 2.0 * (hi - threshold);
      const double next = objective(next_hi);
      hi = next_hi;
      if (next >= previous && next < kInf) break;
      previous = next;
    }
  }

  const ScalarMinimum best = golden_section(objective, threshold, hi, opts);
  if (!(best.value < kInf)) {
    throw Infeasible("dual objective is +inf for every admissible lambda");
  }
  const double tol = opts.tolerance * std::max(1.0, std::abs(best.argmin));
  const bool on_boundary = std::abs(best.argmin - threshold) <= tol ||
                           (std::isfinite(upper) && std::abs(best.argmin - upper) <= tol);
  return {best.value, best.argmin, evaluations, best.converged, on_boundary};
}

double robust_functional(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                         const Penalization& phi, double m) {
  return solve_dual(d, l, p, phi, m).value;
}

namespace {

template <class Objective>
ConvexMinimum minimize_over_m(const PriorDistribution& d, Objective&& objective,
                              const SearchOptions& search) {
  bool finite_seen = false;
  auto f = [&](double m) {
    const double v = objective(m);
    finite_seen = finite_seen || v < kInf;
    return v;
  };
  const bool restrict = search.restrict_to_support && d.is_empirical();
  try {
    return minimize_convex(f, initial_m_bracket(d), !restrict, search.minimize());
  } catch (const NoConvergence&) {
    if (!finite_seen) throw Infeasible("robust functional is +inf at every probed m");
    throw;
  }
}

}  // namespace

RobustValue robust_oce(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                       const Penalization& phi, const SearchOptions& search) {
  int inner = 0;
  auto objective = [&](double m) {
    try {
      const DualSolution s = solve_dual(d, l, p, phi, m, search);
      inner += s.evaluations;
      return m + s.value;
    } catch (const Infeasible&) {
      return kInf;
    }
  };
  const ConvexMinimum r = minimize_over_m(d, objective, search);
  const DualSolution at = solve_dual(d, l, p, phi, r.argmin, search);
  return {r.value, r.argmin_set, at.lambda, r.evaluations + inner,
          r.converged && at.converged, at.on_boundary};
}

RobustValue classical_oce(const PriorDistribution& d, const LossSpec& l,
                          const SearchOptions& search) {
  auto objective = [&](double m) { return m + expected_loss(d, l, m); };
  const ConvexMinimum r = minimize_over_m(d, objective, search);
  return {r.value, r.argmin_set, kNaN, r.evaluations, r.converged, false};
}

}  // namespace rrisk
