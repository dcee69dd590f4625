#pragma once

#include "rrisk/distributions.hpp"
#include "rrisk/losses.hpp"
#include "rrisk/optimize.hpp"
#include "rrisk/penalizations.hpp"

namespace rrisk {

struct SearchOptions {
  double tolerance = 1e-9;
  int max_iterations = 200;
  int max_doublings = 60;
  /// Confine the m-search to [min, max] of an empirical support.
  bool restrict_to_support = false;

  MinimizeOptions minimize() const { return {tolerance, max_iterations, max_doublings}; }
};

struct RobustValue {
  double value;
  Interval argmin_m;
  double argmin_lambda;  // +inf for the lambda -> inf limit, NaN without a lambda layer
  int evaluations;
  bool converged;
  bool lambda_on_boundary = false;
};

/// Minimizer of the lambda layer at a fixed m.
struct DualSolution {
  double value;
  double lambda;
  int evaluations;
  bool converged;
  bool on_boundary;
};

/// E[l(X - m)].
double expected_loss(const PriorDistribution& d, const LossSpec& l, double m);

/// E[l^{lambda c}(X - m)]; +inf as soon as the transform is infinite on a set
/// of positive probability.
double expected_transform(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                          double lambda, double m);

/// inf_{lambda >= 0} E[l^{lambda c}(X - m)] + phi*(lambda) with its minimizer.
/// Throws Infeasible when the objective is +inf for every lambda.
DualSolution solve_dual(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                        const Penalization& phi, double m, const SearchOptions& search = {});

/// The robust expected loss sup_mu { E_mu[l(X - m)] - phi(d_c(mu_X, mu)) }
/// evaluated through its dual.
double robust_functional(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                         const Penalization& phi, double m);

/// inf_m { m + robust_functional(m) }.
RobustValue robust_oce(const PriorDistribution& d, const LossSpec& l, CostExponent p,
                       const Penalization& phi, const SearchOptions& search = {});

/// inf_m { m + E[l(X - m)] }.
RobustValue classical_oce(const PriorDistribution& d, const LossSpec& l,
                          const SearchOptions& search = {});

/// Starting bracket for searches over m: the support for empirical laws,
/// mean +/- spread otherwise.
Interval initial_m_bracket(const PriorDistribution& d);

}  // namespace rrisk
