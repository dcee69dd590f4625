#include "rrisk/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rrisk/errors.hpp"
#include "rrisk/optimize.hpp"

namespace rrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha", "must lie in (0, 1)");
}

void require_power_loss(const PowerLoss& l, const char* field) {
  if (!(l.coefficient >= 0.0) || !std::isfinite(l.coefficient)) {
    throw InvalidInput(field, "coefficient must be nonnegative");
  }
  if (!(l.exponent >= 1.0) || !std::isfinite(l.exponent)) {
    throw InvalidInput(field, "exponent must be >= 1");
  }
}

double side_power(double x, double k) {
  if (x <= 0.0) return 0.0;
  if (k == 1.0) return x;
  if (k == 2.0) return x * x;
  return std::pow(x, k);
}

// Closed-form transform of one side of a two-sided power loss, for the
// coefficient s of (x^+)^p and x >= 0. Returns the coefficient multiplying
// x^p, or +inf when the side explodes.
double quadratic_side_coefficient(double s, double lambda) {
  if (s == 0.0) return 0.0;
  if (lambda > s) return s * lambda / (lambda - s);
  return kInf;
}

// Window radius R: for |y - x| = r the transform objective is at most
//   C (1 + (|x| + r)^q) - lambda r^p,
// which eventually decreases. R is the first doubling at which this bound
// sits below l(x) - slack while decreasing, so nothing outside
// [x - R, x + R] can beat y = x. Returns +inf when no such R is found.
template <class Loss>
double certified_radius(const Loss& l, const GrowthBound& g, double p, double lambda, double x,
                        double slack) {
  const double ax = std::abs(x);
  const double base = l(x);
  auto bound = [&](double r) {
    return g.constant * (1.0 + std::pow(ax + r, g.power)) - lambda * std::pow(r, p);
  };
  auto bound_slope = [&](double r) {
    return g.constant * g.power * std::pow(ax + r, g.power - 1.0) -
           lambda * p * std::pow(r, p - 1.0);
  };
  double radius = 1e-3;
  for (int doublings = 0; doublings <= 200; ++doublings) {
    if (bound(radius) < base - slack && bound_slope(radius) < 0.0) return radius;
    radius *= 2.0;
    if (!std::isfinite(radius)) break;
  }
  return kInf;
}

}  // namespace

CostExponent::CostExponent(double p_) : p(p_) {
  if (!(p_ >= 1.0) || !std::isfinite(p_)) throw InvalidInput("cost-p", "must be >= 1");
}

LossSpec LossSpec::pinball(double alpha) {
  require_alpha(alpha);
  return LossSpec(Pinball{alpha});
}

LossSpec LossSpec::asym_quadratic(double alpha) {
  require_alpha(alpha);
  return LossSpec(AsymQuadratic{alpha});
}

LossSpec LossSpec::generalized_quantile(double alpha, PowerLoss upper, PowerLoss lower) {
  require_alpha(alpha);
  require_power_loss(upper, "l1");
  require_power_loss(lower, "l2");
  return LossSpec(GeneralizedQuantile{alpha, upper, lower});
}

LossSpec LossSpec::custom(std::function<double(double)> evaluator, double growth_constant,
                          double growth_power, std::string name) {
  if (!evaluator) throw InvalidInput("evaluator", "must be callable");
  if (!(growth_constant >= 0.0) || !std::isfinite(growth_constant)) {
    throw InvalidInput("growth_constant", "must be nonnegative");
  }
  if (!(growth_power >= 1.0) || !std::isfinite(growth_power)) {
    throw InvalidInput("growth_power", "must be >= 1");
  }
  for (int i = -4000; i <= 4000; ++i) {
    const double x = 0.25 * i;
    const double v = evaluator(x);
    const double bound = growth_constant * (1.0 + std::pow(std::abs(x), growth_power));
    if (!std::isfinite(v) || v > bound * (1.0 + 1e-12) + 1e-12) {
      std::ostringstream msg;
      msg << "growth bound violated at x=" << x << ": l(x)=" << v << " > " << bound;
      throw UncertifiedGrowth(msg.str());
    }
  }
  return LossSpec(CustomLoss{std::move(evaluator), growth_constant, growth_power, std::move(name)});
}

std::optional<LossSpec::TwoSided> LossSpec::two_sided() const {
  return std::visit(
      overloaded{
          [](const Pinball& l) -> std::optional<TwoSided> {
            return TwoSided{l.alpha, 1.0, 1.0 - l.alpha, 1.0};
          },
          [](const AsymQuadratic& l) -> std::optional<TwoSided> {
            return TwoSided{l.alpha, 2.0, 1.0 - l.alpha, 2.0};
          },
          [](const GeneralizedQuantile& l) -> std::optional<TwoSided> {
            return TwoSided{l.alpha * l.upper.coefficient, l.upper.exponent,
                            (1.0 - l.alpha) * l.lower.coefficient, l.lower.exponent};
          },
          [](const CustomLoss&) -> std::optional<TwoSided> { return std::nullopt; },
      },
      kind_);
}

double LossSpec::operator()(double x) const {
  if (const auto* c = std::get_if<CustomLoss>(&kind_)) return c->evaluator(x);
  const TwoSided t = *two_sided();
  return t.upper_coefficient * side_power(x, t.upper_exponent) +
         t.lower_coefficient * side_power(-x, t.lower_exponent);
}

GrowthBound LossSpec::growth() const {
  if (const auto* c = std::get_if<CustomLoss>(&kind_)) {
    return {c->growth_constant, c->growth_power};
  }
  const TwoSided t = *two_sided();
  double power = 1.0;
  if (t.upper_coefficient > 0.0) power = std::max(power, t.upper_exponent);
  if (t.lower_coefficient > 0.0) power = std::max(power, t.lower_exponent);
  return {std::max(t.upper_coefficient, t.lower_coefficient), power};
}

std::string LossSpec::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Pinball& l) { out << "pinball(" << l.alpha << ")"; },
                 [&](const AsymQuadratic& l) { out << "asym_quadratic(" << l.alpha << ")"; },
                 [&](const GeneralizedQuantile& l) {
                   out << "generalized_quantile(" << l.alpha << "; " << l.upper.coefficient << "x^"
                       << l.upper.exponent << ", " << l.lower.coefficient << "x^"
                       << l.lower.exponent << ")";
                 },
                 [&](const CustomLoss& l) { out << l.name; },
             },
             kind_);
  return out.str();
}

bool has_closed_form_transform(const LossSpec& l, CostExponent p) {
  const auto t = l.two_sided();
  if (!t) return false;
  if (p.p != 1.0 && p.p != 2.0) return false;
  const bool upper_ok = t->upper_coefficient == 0.0 || t->upper_exponent == p.p;
  const bool lower_ok = t->lower_coefficient == 0.0 || t->lower_exponent == p.p;
  return upper_ok && lower_ok;
}

namespace {

double closed_form_transform(const LossSpec::TwoSided& t, double p, double lambda, double x) {
  const double a = t.upper_coefficient;
  const double b = t.lower_coefficient;
  if (p == 1.0) {
    // Lipschitz loss: y = x is optimal once lambda dominates both slopes.
    if (lambda < std::max(a, b)) return kInf;
    return a * std::max(x, 0.0) + b * std::max(-x, 0.0);
  }
  // p == 2: three regimes, lambda below, on, or above max{a, b}.
  const double top = std::max(a, b);
  if (lambda < top) return kInf;
  if (lambda == top && a == b) return kInf;
  const double up = quadratic_side_coefficient(a, lambda);
  const double low = quadratic_side_coefficient(b, lambda);
  if (x > 0.0) return up == kInf ? kInf : up * x * x;
  if (x < 0.0) return low == kInf ? kInf : low * x * x;
  return 0.0;
}

}  // namespace

double finiteness_threshold(const LossSpec& l, CostExponent p) {
  if (has_closed_form_transform(l, p)) {
    const auto t = *l.two_sided();
    return std::max(t.upper_coefficient, t.lower_coefficient);
  }
  const GrowthBound g = l.growth();
  if (g.power > p.p) {
    std::ostringstream msg;
    msg << l.describe() << " grows like |x|^" << g.power << ", faster than the cost exponent "
        << p.p;
    throw UncertifiedGrowth(msg.str());
  }
  if (std::holds_alternative<CustomLoss>(l.kind())) return g.constant;
  return g.power < p.p ? 0.0 : g.constant;
}

double numeric_lambda_c_transform(const LossSpec& l, CostExponent p, double lambda, double x,
                                  const NumericSupOptions& options) {
  const GrowthBound g = l.growth();
  if (g.power > p.p) throw UncertifiedGrowth("loss grows faster than the transport cost");
  if (!(lambda > 0.0)) return kInf;
  const bool custom = std::holds_alternative<CustomLoss>(l.kind());
  if (g.power == p.p && (custom ? lambda <= g.constant : lambda < g.constant)) return kInf;

  const double cost_p = p.p;
  auto cost = [cost_p](double r) {
    if (cost_p == 1.0) return r;
    if (cost_p == 2.0) return r * r;
    return std::pow(r, cost_p);
  };
  auto objective = [&](double y) { return l(y) - lambda * cost(std::abs(x - y)); };
  const double base = l(x);
  const double radius = certified_radius(l, g, p.p, lambda, x, options.tail_slack);
  if (!std::isfinite(radius)) return kInf;

  double step = options.step;
  auto half_points = static_cast<std::size_t>(std::ceil(radius / step));
  if (2 * half_points + 1 > options.max_points) {
    half_points = options.max_points / 2;
    step = radius / static_cast<double>(half_points);
  }
  const auto n = static_cast<long long>(half_points);
  double best_y = x;
  double best = base;
  for (long long k = -n; k <= n; ++k) {
    const double y = x + static_cast<double>(k) * step;
    const double v = objective(y);
    if (v > best) {
      best = v;
      best_y = y;
    }
  }
  auto negated = [&](double y) { return -objective(y); };
  const ScalarMinimum refined =
      golden_section(negated, best_y - step, best_y + step, MinimizeOptions{1e-12, 200, 60});
  return std::max(best, -refined.value);
}

double lambda_c_transform(const LossSpec& l, CostExponent p, double lambda, double x) {
  if (!(lambda >= 0.0)) throw InvalidInput("lambda", "must be nonnegative");
  if (has_closed_form_transform(l, p)) {
    return closed_form_transform(*l.two_sided(), p.p, lambda, x);
  }
  if (p.p == 1.0) {
    // With p = 1 the objective is convex in y on each side of x, so its
    // maximum over the certified window sits at y = x or at a window end.
    const GrowthBound g = l.growth();
    if (g.power > 1.0) throw UncertifiedGrowth("loss grows faster than the transport cost");
    const bool custom = std::holds_alternative<CustomLoss>(l.kind());
    if (custom ? lambda <= g.constant : lambda < g.constant) return kInf;
    const double radius = certified_radius(l, g, p.p, lambda, x, NumericSupOptions{}.tail_slack);
    if (!std::isfinite(radius)) return kInf;
    return std::max({l(x), l(x - radius) - lambda * radius, l(x + radius) - lambda * radius});
  }
  return numeric_lambda_c_transform(l, p, lambda, x);
}

bool check_L_membership(const LossSpec& l, CostExponent p, double lambda,
                        std::span<const double> grid) {
  const double at_zero = lambda_c_transform(l, p, lambda, 0.0);
  if (!std::isfinite(at_zero)) return false;
  for (double x : grid) {
    const double v = lambda_c_transform(l, p, lambda, x);
    if (!std::isfinite(v)) return false;
    if (v < at_zero + x - 1e-9 * std::max(1.0, std::abs(v))) return false;
  }
  return true;
}

}  // namespace rrisk
