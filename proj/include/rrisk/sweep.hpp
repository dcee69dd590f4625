#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrisk/distributions.hpp"

namespace rrisk {

enum class PenaltyFamily { linear, ball };

PenaltyFamily parse_penalty_family(std::string_view text);
const char* to_string(PenaltyFamily family);

struct SweepGrid {
  std::vector<double> alphas;
  std::vector<double> deltas;
  PenaltyFamily penalty;
  PriorDistribution prior;
};

struct SweepRow {
  double alpha;
  double delta;
  double robust_value;
  double classical_expectile;
  double var_value;
  double mean;
  int solver_iterations;
  bool converged;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // alpha-major, deltas ascending within each alpha
  std::vector<std::pair<double, double>> skipped;  // (alpha, delta) pairs outside the family domain
};

/// `a,b,c` or `start:stop:step` (inclusive of stop up to rounding).
std::vector<double> parse_grid(std::string_view text, const std::string& field);

/// Grids must be nonempty and strictly increasing. Linear pairs with
/// delta <= max{alpha, 1 - alpha} are skipped; per-row solver failures are
/// kept with converged = false.
SweepResult run_sweep(const SweepGrid& grid);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// 800x600 line chart: robust value against delta, one polyline per alpha.
std::string render_sweep_svg(const std::vector<SweepRow>& rows, PenaltyFamily penalty,
                             const std::string& title);

}  // namespace rrisk
