#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace rrisk {

/// x -> coefficient * x^exponent on [0, inf).
struct PowerLoss {
  double coefficient;
  double exponent;
};

/// h(x) = alpha x^+ + (1 - alpha) x^-.
struct Pinball {
  double alpha;
};

/// h(x) = alpha (x^+)^2 + (1 - alpha) (x^-)^2.
struct AsymQuadratic {
  double alpha;
};

/// h(x) = alpha l1(x^+) + (1 - alpha) l2(x^-) with power losses l1, l2.
struct GeneralizedQuantile {
  double alpha;
  PowerLoss upper;
  PowerLoss lower;
};

/// A user-supplied convex increasing loss with the growth certificate
/// l(x) <= growth_constant * (1 + |x|^growth_power).
struct CustomLoss {
  std::function<double(double)> evaluator;
  double growth_constant;
  double growth_power;
  std::string name = "custom";
};

/// Transport cost exponent p in c(x, y) = |x - y|^p.
struct CostExponent {
  double p;

  explicit CostExponent(double p_);
};

/// Polynomial growth certificate h(x) <= constant * (1 + |x|^power).
struct GrowthBound {
  double constant;
  double power;
};

/// Loss function l or h of a robust functional.
class LossSpec {
 public:
  using Kind = std::variant<Pinball, AsymQuadratic, GeneralizedQuantile, CustomLoss>;

  static LossSpec pinball(double alpha);
  static LossSpec asym_quadratic(double alpha);
  static LossSpec generalized_quantile(double alpha, PowerLoss upper, PowerLoss lower);
  /// Checks the growth certificate on a grid over [-1000, 1000] and throws
  /// UncertifiedGrowth when it fails.
  static LossSpec custom(std::function<double(double)> evaluator, double growth_constant,
                         double growth_power, std::string name = "custom");

  const Kind& kind() const noexcept { return kind_; }
  double operator()(double x) const;
  GrowthBound growth() const;
  std::string describe() const;

  /// Two-sided power form a (x^+)^k_up + b (x^-)^k_low, available for every
  /// family except custom losses.
  struct TwoSided {
    double upper_coefficient;
    double upper_exponent;
    double lower_coefficient;
    double lower_exponent;
  };
  std::optional<TwoSided> two_sided() const;

 private:
  explicit LossSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Whether lambda_c_transform has a closed form for (l, p): both sides of the
/// loss are powers equal to p, with p in {1, 2}. Pinball with p = 1 and
/// AsymQuadratic with p = 2 are the canonical cases.
bool has_closed_form_transform(const LossSpec& l, CostExponent p);

/// sup_y { l(y) - lambda |x - y|^p }; may be +inf.
double lambda_c_transform(const LossSpec& l, CostExponent p, double lambda, double x);

struct NumericSupOptions {
  double step = 1e-3;
  double tail_slack = 1e-6;
  std::size_t max_points = 2'000'000;
};

/// The transform computed by direct maximization over a certified window
/// around x (grid search followed by golden-section refinement). Used for
/// custom losses and as the oracle for the closed forms.
double numeric_lambda_c_transform(const LossSpec& l, CostExponent p, double lambda, double x,
                                  const NumericSupOptions& options = {});

/// Infimal lambda below which the transform is identically +inf. Throws
/// UncertifiedGrowth when the loss grows faster than the cost.
double finiteness_threshold(const LossSpec& l, CostExponent p);

/// Numeric certificate that l^{lambda c}(x) >= l^{lambda c}(0) + x holds at
/// every grid point.
bool check_L_membership(const LossSpec& l, CostExponent p, double lambda,
                        std::span<const double> grid);

}  // namespace rrisk
