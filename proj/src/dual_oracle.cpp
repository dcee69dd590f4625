#include "rrisk/dual_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rrisk/errors.hpp"

namespace rrisk {

DensityBand DensityBand::for_linear_expectile(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha", "must lie in (0, 1)");
  if (!(delta > std::max(alpha, 1.0 - alpha))) {
    throw DeltaTooSmall("delta must exceed max{alpha, 1 - alpha}");
  }
  return {2.0 * (1.0 - alpha) * delta / (delta - (1.0 - alpha)),
          2.0 * alpha * delta / (delta - alpha)};
}

double DensityBand::ratio() const {
  if (!(lower > 0.0) || !(upper > 0.0)) throw InvalidInput("band", "bounds must be positive");
  return std::max(upper, lower) / std::min(upper, lower);
}

double dual_expectile_max(const PriorDistribution& d, const DensityBand& band,
                          Direction direction) {
  const auto atoms = d.atoms();
  const double rho = band.ratio();
  const std::size_t n = atoms.size();

  // Split k: atoms [k, n) get density ratio rho * c and atoms [0, k) get c
  // when maximizing; the roles swap when minimizing.
  std::vector<double> mass(n + 1, 0.0);
  std::vector<double> moment(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i + 1] = mass[i] + atoms[i].weight;
    moment[i + 1] = moment[i] + atoms[i].weight * atoms[i].value;
  }
  const double total_mass = mass[n];
  const double total_moment = moment[n];
  const bool maximize = direction == Direction::maximize;

  double best = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    const double low_mass = mass[k];
    const double high_mass = total_mass - mass[k];
    const double low_moment = moment[k];
    const double high_moment = total_moment - moment[k];
    const double value =
        maximize ? (low_moment + rho * high_moment) / (low_mass + rho * high_mass)
                 : (rho * low_moment + high_moment) / (rho * low_mass + high_mass);
    best = maximize ? std::max(best, value) : std::min(best, value);
  }
  return best;
}

double wasserstein_1d(const PriorDistribution& a, const PriorDistribution& b, CostExponent p) {
  const auto xa = a.atoms();
  const auto xb = b.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  double left_a = xa[0].weight;
  double left_b = xb[0].weight;
  double cost = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double moved = std::min(left_a, left_b);
    cost += moved * std::pow(std::abs(xa[i].value - xb[j].value), p.p);
    left_a -= moved;
    left_b -= moved;
    if (left_a <= 0.0) {
      if (++i < xa.size()) left_a = xa[i].weight;
    }
    if (left_b <= 0.0) {
      if (++j < xb.size()) left_b = xb[j].weight;
    }
  }
  return cost;
}

}  // namespace rrisk
