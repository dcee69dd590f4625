#include "rrisk/penalizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw InvalidInput("lambda", "must be nonnegative");
}

}  // namespace

Penalization Penalization::linear(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("delta", "must be positive");
  return Penalization(Linear{delta});
}

Penalization Penalization::ball(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InvalidInput("delta", "must be nonnegative");
  }
  return Penalization(Ball{delta});
}

Penalization Penalization::piecewise(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.empty()) throw InvalidInput("breakpoints", "must not be empty");
  if (breakpoints.front().x != 0.0) {
    throw InvalidInput("breakpoints", "first breakpoint must sit at x = 0");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const Breakpoint& b = breakpoints[i];
    if (!std::isfinite(b.x) || !std::isfinite(b.slope) || b.slope < 0.0) {
      throw InvalidInput("breakpoints", "slopes must be finite and nonnegative");
    }
    if (i > 0) {
      if (!(b.x > breakpoints[i - 1].x)) {
        throw InvalidInput("breakpoints", "x values must be strictly increasing");
      }
      if (b.slope < breakpoints[i - 1].slope) {
        throw InvalidInput("breakpoints", "slopes must be nondecreasing");
      }
    }
    any_positive = any_positive || b.slope > 0.0;
  }
  if (!any_positive) throw InvalidInput("breakpoints", "all-zero slopes give a constant phi");
  return Penalization(PiecewiseLinear{std::move(breakpoints)});
}

std::string Penalization::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Linear& p) { out << "linear(" << p.delta << ")"; },
                 [&](const Ball& p) { out << "ball(" << p.delta << ")"; },
                 [&](const PiecewiseLinear& p) {
                   out << "piecewise(";
                   for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                     if (i) out << "; ";
                     out << p.breakpoints[i].x << ":" << p.breakpoints[i].slope;
                   }
                   out << ")";
                 },
             },
             kind_);
  return out.str();
}

double evaluate(const Penalization& phi, double x) {
  if (!(x >= 0.0)) throw InvalidInput("x", "must be nonnegative");
  return std::visit(overloaded{
                        [&](const Linear& p) { return p.delta * x; },
                        [&](const Ball& p) { return x <= p.delta ? 0.0 : kInf; },
                        [&](const PiecewiseLinear& p) {
                          double value = 0.0;
                          const auto& bp = p.breakpoints;
                          for (std::size_t i = 0; i < bp.size(); ++i) {
                            const double end = i + 1 < bp.size() ? bp[i + 1].x : kInf;
                            if (x <= bp[i].x) break;
                            value += bp[i].slope * (std::min(x, end) - bp[i].x);
                          }
                          return value;
                        },
                    },
                    phi.kind());
}

double conjugate(const Penalization& phi, double lambda) {
  require_lambda(lambda);
  return std::visit(overloaded{
                        [&](const Linear& p) { return lambda <= p.delta ? 0.0 : kInf; },
                        [&](const Ball& p) { return p.delta * lambda; },
                        [&](const PiecewiseLinear& p) {
                          // The sup of a concave piecewise-linear function of x
                          // is attained at a breakpoint, or is +inf when lambda
                          // beats the final slope.
                          const auto& bp = p.breakpoints;
                          if (lambda > bp.back().slope) return kInf;
                          double best = 0.0;
                          double phi_at = 0.0;
                          for (std::size_t i = 0; i < bp.size(); ++i) {
                            if (i > 0) phi_at += bp[i - 1].slope * (bp[i].x - bp[i - 1].x);
                            best = std::max(best, bp[i].x * lambda - phi_at);
                          }
                          return best;
                        },
                    },
                    phi.kind());
}

double conjugate_domain_upper(const Penalization& phi) {
  return std::visit(overloaded{
                        [](const Linear& p) { return p.delta; },
                        [](const Ball&) { return kInf; },
                        [](const PiecewiseLinear& p) { return p.breakpoints.back().slope; },
                    },
                    phi.kind());
}

bool conjugate_domain_closed(const Penalization& phi) {
  return !std::holds_alternative<Ball>(phi.kind());
}

bool has_zero_conjugate(const Penalization& phi) {
  const auto* b = std::get_if<Ball>(&phi.kind());
  return b != nullptr && b->delta == 0.0;
}

}  // namespace rrisk
