#pragma once

#include <string>
#include <variant>
#include <vector>

namespace rrisk {

/// phi(x) = delta x.
struct Linear {
  double delta;
};

/// phi(x) = 0 on [0, delta], +inf beyond.
struct Ball {
  double delta;
};

struct Breakpoint {
  double x;
  double slope;  // slope of phi to the right of x
};

/// Convex piecewise-linear phi with phi(0) = 0. The first breakpoint sits at
/// x = 0 and slopes are nondecreasing.
struct PiecewiseLinear {
  std::vector<Breakpoint> breakpoints;
};

class Penalization {
 public:
  using Kind = std::variant<Linear, Ball, PiecewiseLinear>;

  static Penalization linear(double delta);
  static Penalization ball(double delta);
  static Penalization piecewise(std::vector<Breakpoint> breakpoints);

  const Kind& kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  explicit Penalization(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// phi(x) for x >= 0; may be +inf.
double evaluate(const Penalization& phi, double x);

/// phi*(lambda) = sup_{x >= 0} (x lambda - phi(x)) for lambda >= 0; may be +inf.
double conjugate(const Penalization& phi, double lambda);

/// Supremum of the effective domain {lambda >= 0 : phi*(lambda) < inf}
/// (+inf when the conjugate is finite everywhere).
double conjugate_domain_upper(const Penalization& phi);

/// Whether lambda = conjugate_domain_upper itself lies in the domain.
bool conjugate_domain_closed(const Penalization& phi);

/// True when phi* vanishes identically on [0, inf) (Ball with delta = 0).
bool has_zero_conjugate(const Penalization& phi);

}  // namespace rrisk
