#pragma once

#include <functional>
#include <limits>

namespace rrisk {

/// Closed interval [lower, upper]; either end may be infinite.
struct Interval {
  double lower;
  double upper;

  static Interval point(double x) { return {x, x}; }
  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double x, double slack = 0.0) const {
    return lower - slack <= x && x <= upper + slack;
  }
};

struct MinimizeOptions {
  double tolerance = 1e-9;  // relative to max(1, |x|)
  int max_iterations = 200;
  int max_doublings = 60;
};

struct ScalarMinimum {
  double argmin;
  double value;
  int evaluations;
  bool converged;
};

/// Golden-section search for a convex (or unimodal) function on [lo, hi].
/// Endpoints are evaluated as well, so a minimizer sitting on the boundary of
/// the domain is found exactly.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             const MinimizeOptions& options = {});

/// Root of a nondecreasing function by bisection on [lo, hi], expanding the
/// bracket outward by doubling until it changes sign. Returns the midpoint of
/// the final bracket. Throws NoConvergence when no sign change is found.
struct RootResult {
  double root;
  int iterations;
  bool converged;
};
RootResult bisect_increasing(const std::function<double(double)>& g, double lo, double hi,
                             const MinimizeOptions& options = {});

/// Result of minimizing a convex function of one variable, with the full
/// argmin set reported as an interval.
struct ConvexMinimum {
  double value;
  double argmin;
  Interval argmin_set;
  int evaluations;
  bool converged;
};

/// Minimizes a convex function. When `expand` is true the initial interval
/// is only a starting bracket and is pushed outward (doubling) until it
/// encloses a minimizer; otherwise the search is confined to it.
///
/// The argmin set is located by bisection on one-sided finite-difference
/// slopes: its left end is where the forward slope stops being negative and
/// its right end is where the backward slope starts being positive. This
/// keeps kinks of piecewise-linear objectives inside the reported interval.
ConvexMinimum minimize_convex(const std::function<double(double)>& f, Interval start,
                              bool expand, const MinimizeOptions& options = {});

}  // namespace rrisk
