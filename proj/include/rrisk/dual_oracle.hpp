#pragma once

#include "rrisk/distributions.hpp"
#include "rrisk/losses.hpp"

namespace rrisk {

/// Density-ratio band lower <= t0 dQ/dP <= upper. Only the ratio of the two
/// bounds matters once the free scale t0 is eliminated.
struct DensityBand {
  double lower;
  double upper;

  /// Bounds 2(1 - alpha) delta / (delta - (1 - alpha)) and
  /// 2 alpha delta / (delta - alpha) of the linear-penalization expectile.
  static DensityBand for_linear_expectile(double alpha, double delta);

  /// max(upper, lower) / min(upper, lower) >= 1.
  double ratio() const;
};

enum class Direction { maximize, minimize };

/// Optimizes E_Q[X] over probability vectors q on the atoms of d whose density
/// ratios q_i / p_i stay within a factor band.ratio() of each other. Solved by
/// scanning the n + 1 threshold splits of the sorted atoms.
double dual_expectile_max(const PriorDistribution& d, const DensityBand& band,
                          Direction direction = Direction::maximize);

/// Optimal transport cost int |x - y|^p dpi between two empirical laws, via
/// the monotone (quantile) coupling.
double wasserstein_1d(const PriorDistribution& a, const PriorDistribution& b, CostExponent p);

}  // namespace rrisk
