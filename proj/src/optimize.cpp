#include "rrisk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(double x) { return std::max(1.0, std::abs(x)); }

// Counts evaluations and remembers the best point seen.
class Tracked {
 public:
  explicit Tracked(const std::function<double(double)>& f) : f_(f) {}

  double operator()(double x) {
    ++count_;
    const double v = f_(x);
    if (!frozen_ && (count_ == 1 || v < best_value_)) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }

  // Later evaluations still count but no longer move the best point.
  void freeze() { frozen_ = true; }
  int count() const { return count_; }
  double best_x() const { return best_x_; }
  double best_value() const { return best_value_; }

 private:
  const std::function<double(double)>& f_;
  int count_ = 0;
  bool frozen_ = false;
  double best_x_ = std::numeric_limits<double>::quiet_NaN();
  double best_value_ = kInf;
};

}  // namespace

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             const MinimizeOptions& options) {
  if (hi < lo) std::swap(lo, hi);
  Tracked g(f);
  g(lo);
  if (hi == lo) return {g.best_x(), g.best_value(), g.count(), true};
  g(hi);

  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g(c);
  double fd = g(d);
  bool converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    if (b - a <= options.tolerance * scale_of(0.5 * (a + b))) {
      converged = true;
      break;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g(d);
    }
  }
  if (!converged) converged = b - a <= options.tolerance * scale_of(0.5 * (a + b));
  return {g.best_x(), g.best_value(), g.count(), converged};
}

RootResult bisect_increasing(const std::function<double(double)>& g, double lo, double hi,
                             const MinimizeOptions& options) {
  if (hi < lo) std::swap(lo, hi);
  if (hi == lo) hi = lo + scale_of(lo);
  double width = hi - lo;
  int doublings = 0;
  double glo = g(lo);
  while (glo > 0.0) {
    if (++doublings > options.max_doublings) {
      throw NoConvergence("root bracket expansion exceeded doubling limit (left)");
    }
    hi = lo;
    lo -= width;
    width *= 2.0;
    glo = g(lo);
  }
  double ghi = g(hi);
  while (ghi < 0.0) {
    if (++doublings > options.max_doublings) {
      throw NoConvergence("root bracket expansion exceeded doubling limit (right)");
    }
    lo = hi;
    glo = ghi;
    hi += width;
    width *= 2.0;
    ghi = g(hi);
  }
  if (glo == 0.0) return {lo, 0, true};
  if (ghi == 0.0) return {hi, 0, true};

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= options.tolerance * scale_of(mid)) break;
    const double gm = g(mid);
    if (gm == 0.0) return {mid, it + 1, true};
    if (gm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it, it < options.max_iterations};
}

ConvexMinimum minimize_convex(const std::function<double(double)>& f, Interval start,
                              bool expand, const MinimizeOptions& options) {
  Tracked g(f);
  double lo = std::min(start.lower, start.upper);
  double hi = std::max(start.lower, start.upper);

  if (expand) {
    if (hi - lo <= 0.0) {
      const double half = 0.5 * scale_of(lo);
      lo -= half;
      hi += half;
    }
    double a = lo;
    double c = hi;
    double b = 0.5 * (a + c);
    double fa = g(a);
    double fb = g(b);
    double fc = g(c);
    int doublings = 0;
    while (fa < fb) {
      if (++doublings > options.max_doublings) {
        throw NoConvergence("objective keeps decreasing to the left; no minimizer bracketed");
      }
      c = b;
      fc = fb;
      b = a;
      fb = fa;
      a = b - 2.0 * (c - b);
      fa = g(a);
    }
    while (fc < fb) {
      if (++doublings > options.max_doublings) {
        throw NoConvergence("objective keeps decreasing to the right; no minimizer bracketed");
      }
      a = b;
      fa = fb;
      b = c;
      fb = fc;
      c = b + 2.0 * (b - a);
      fc = g(c);
    }
    if (fb == kInf) throw NoConvergence("objective is +inf across the whole bracket");
    lo = a;
    hi = c;
  }

  const ScalarMinimum gs = golden_section(std::ref(g), lo, hi, options);
  double m_star = g.best_x();
  double f_min = g.best_value();
  if (!(f_min < kInf)) throw NoConvergence("objective is +inf across the search interval");
  // Far-out edge probes can lose the value to cancellation (m + f(m) with
  // |m| huge), so they only shape the interval.
  g.freeze();

  const double eta = 1e-7 * scale_of(m_star);
  const double eps = 1e-7 * scale_of(f_min);
  const double edge_tol = 1e-9;
  auto forward = [&](double m) { return (g(m + eta) - g(m)) / eta; };
  auto backward = [&](double m) { return (g(m) - g(m - eta)) / eta; };
  bool edges_ok = true;

  // Left end: largest point whose forward slope is still below -eps.
  double left;
  {
    double inside = m_star;
    double step = eta;
    while (forward(inside) < -eps) {
      inside = m_star + step;
      step *= 2.0;
      if (inside >= hi) {
        inside = hi;
        break;
      }
    }
    double outside = lo;
    bool bounded = true;
    if (forward(outside) >= -eps) {
      if (!expand) {
        bounded = false;
        left = lo;
      } else {
        double dist = std::max(inside - outside, eta);
        int k = 0;
        while (forward(outside) >= -eps) {
          if (++k > options.max_doublings) {
            bounded = false;
            break;
          }
          dist *= 2.0;
          outside = inside - dist;
        }
        if (!bounded) left = -kInf;
      }
    }
    if (bounded) {
      int it = 0;
      while (inside - outside > edge_tol * scale_of(inside) && it++ < options.max_iterations) {
        const double mid = 0.5 * (inside + outside);
        if (forward(mid) < -eps) {
          outside = mid;
        } else {
          inside = mid;
        }
      }
      edges_ok = edges_ok && it <= options.max_iterations;
      left = outside;
    }
  }

  // Right end: smallest point whose backward slope already exceeds eps.
  double right;
  {
    double inside = m_star;
    double step = eta;
    while (backward(inside) > eps) {
      inside = m_star - step;
      step *= 2.0;
      if (inside <= lo) {
        inside = lo;
        break;
      }
    }
    double outside = hi;
    bool bounded = true;
    if (backward(outside) <= eps) {
      if (!expand) {
        bounded = false;
        right = hi;
      } else {
        double dist = std::max(outside - inside, eta);
        int k = 0;
        while (backward(outside) <= eps) {
          if (++k > options.max_doublings) {
            bounded = false;
            break;
          }
          dist *= 2.0;
          outside = inside + dist;
        }
        if (!bounded) right = kInf;
      }
    }
    if (bounded) {
      int it = 0;
      while (outside - inside > edge_tol * scale_of(inside) && it++ < options.max_iterations) {
        const double mid = 0.5 * (inside + outside);
        if (backward(mid) > eps) {
          outside = mid;
        } else {
          inside = mid;
        }
      }
      edges_ok = edges_ok && it <= options.max_iterations;
      right = outside;
    }
  }

  if (!expand) {
    left = std::max(left, lo);
    right = std::min(right, hi);
  }
  left = std::min(left, m_star);
  right = std::max(right, m_star);

  return {f_min, m_star, Interval{left, right}, g.count(), gs.converged && edges_ok};
}

}  // namespace rrisk
