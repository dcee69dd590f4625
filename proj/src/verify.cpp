#include "rrisk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "rrisk/dual_oracle.hpp"
#include "rrisk/errors.hpp"
#include "rrisk/risk_measures.hpp"
#include "rrisk/robust_core.hpp"
#include "rrisk/sweep.hpp"

namespace rrisk::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream out;
  out.precision(17);
  (out << ... << args);
  return out.str();
}

// Accumulates cases of one property and keeps the first counterexample.
class Property {
 public:
  explicit Property(std::string name) : name_(std::move(name)) {}

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++cases_;
    if (!ok && passed_) {
      passed_ = false;
      detail_ = describe();
    }
  }

  // Runs one case, turning library errors into counterexamples.
  template <class Body>
  void run(Body&& body, const std::string& context) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, [&] { return context + " threw: " + e.what(); });
    }
  }

  CheckResult result() const {
    return {name_, passed_, passed_ ? str(cases_, " cases") : detail_};
  }

 private:
  std::string name_;
  bool passed_ = true;
  int cases_ = 0;
  std::string detail_;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<double> random_weights(std::mt19937_64& rng, int n, bool uniform_weights) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (!uniform_weights) {
    for (double& x : w) x = uniform(rng, 0.05, 1.0);
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> random_values(std::mt19937_64& rng, int n) {
  const double centre = uniform(rng, -2.0, 2.0);
  const double scale = uniform(rng, 0.5, 3.0);
  std::normal_distribution<double> normal(centre, scale);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = normal(rng);
  return v;
}

PriorDistribution make_empirical(const std::vector<double>& values,
                                 const std::vector<double>& weights) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], weights[i]});
  return PriorDistribution::empirical(std::move(atoms));
}

PriorDistribution random_empirical(std::mt19937_64& rng, int max_atoms) {
  const int n = uniform_int(rng, 1, max_atoms);
  const bool flat = uniform_int(rng, 0, 1) == 0;
  return make_empirical(random_values(rng, n), random_weights(rng, n, flat));
}

PriorDistribution random_prior(std::mt19937_64& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return PriorDistribution::normal(uniform(rng, -2.0, 2.0), uniform(rng, 0.3, 3.0));
    case 1:
      return PriorDistribution::exponential(uniform(rng, 0.3, 3.0));
    case 2:
      return PriorDistribution::student_t(uniform(rng, 3.0, 12.0), uniform(rng, -1.0, 1.0),
                                          uniform(rng, 0.5, 2.0));
    default:
      return random_empirical(rng, 50);
  }
}

// Two positions on a shared sample space with common probabilities.
struct Pair {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> p;
};

Pair random_pair(std::mt19937_64& rng, int max_atoms) {
  const int n = uniform_int(rng, 1, max_atoms);
  Pair out{random_values(rng, n), random_values(rng, n), {}};
  out.p = random_weights(rng, n, uniform_int(rng, 0, 1) == 0);
  return out;
}

std::vector<double> combine(const std::vector<double>& a, const std::vector<double>& b,
                            double s, double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i] + t * b[i];
  return out;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

CriterionReport finish(int id, std::string name, std::vector<Property> props, const Timer& timer,
                       double limit) {
  CriterionReport report{id, std::move(name), {}, timer.seconds(), limit};
  for (const Property& p : props) report.checks.push_back(p.result());
  return report;
}

}  // namespace

bool CriterionReport::passed() const {
  if (!within_time()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CriterionReport var_degeneracy(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property contains("robust-VaR==VaR");
  const std::vector<Penalization> penalties{Penalization::linear(0.95), Penalization::linear(5.0),
                                            Penalization::ball(0.5)};
  for (int k = 0; k < 25; ++k) {
    const PriorDistribution d = random_empirical(rng, 100);
    for (int a = 1; a <= 9; ++a) {
      const double alpha = 0.1 * a;
      const LossSpec h = LossSpec::pinball(alpha);
      for (const Penalization& phi : penalties) {
        contains.run(
            [&] {
              const Interval q = robust_generalized_quantile(d, h, CostExponent(1.0), phi);
              const double v = var(d, alpha);
              contains.expect(q.contains(v), [&] {
                return str("prior #", k, " alpha=", alpha, " ", phi.describe(), ": interval [",
                           q.lower, ", ", q.upper, "] misses VaR ", v);
              });
            },
            str("prior #", k, " alpha=", alpha, " ", phi.describe()));
      }
    }
  }
  return finish(1, "robust VaR equals VaR", {contains}, timer, 5.0);
}

CriterionReport dual_representation(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property exact("three-point case equals 30/11 on both routes");
  exact.run(
      [&] {
        const std::vector<double> v{1.0, 2.0, 3.0};
        const PriorDistribution d = PriorDistribution::empirical_uniform(v);
        const double primal = robust_expectile_linear(d, 0.75, 1.0);
        const double dual =
            dual_expectile_max(d, DensityBand::for_linear_expectile(0.75, 1.0), Direction::maximize);
        exact.expect(close(primal, 30.0 / 11.0, 1e-12) && close(dual, 30.0 / 11.0, 1e-12), [&] {
          return str("primal ", primal, " dual ", dual, " expected ", 30.0 / 11.0);
        });
      },
      "three-point case");

  Property agree("robust expectile matches density-band dual within 1e-8");
  const double max_levels[] = {0.6, 0.75, 0.9};
  const double min_levels[] = {0.1, 0.25, 0.4};
  const double deltas[] = {1.0, 2.0, 10.0};
  for (int k = 0; k < 50; ++k) {
    const PriorDistribution d = random_empirical(rng, 50);
    for (int side = 0; side < 2; ++side) {
      const auto& levels = side == 0 ? max_levels : min_levels;
      const Direction dir = side == 0 ? Direction::maximize : Direction::minimize;
      for (double alpha : levels) {
        for (double delta : deltas) {
          agree.run(
              [&] {
                const double primal = robust_expectile_linear(d, alpha, delta);
                const double dual =
                    dual_expectile_max(d, DensityBand::for_linear_expectile(alpha, delta), dir);
                agree.expect(close(primal, dual, 1e-8), [&] {
                  return str("prior #", k, " alpha=", alpha, " delta=", delta, ": primal ",
                             primal, " dual ", dual);
                });
              },
              str("prior #", k, " alpha=", alpha, " delta=", delta));
        }
      }
    }
  }
  return finish(2, "dual representation agreement", {exact, agree}, timer, 0.0);
}

CriterionReport reductions(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, PriorDistribution>> priors{
      {"normal(0,1)", PriorDistribution::normal(0.0, 1.0)},
      {"exponential(1)", PriorDistribution::exponential(1.0)},
      {"student-t(5)", PriorDistribution::student_t(5.0)}};
  const double levels[] = {0.2, 0.7, 0.9};

  Property ball_zero("ball radius 0 gives the classical expectile within 1e-8");
  Property ball_zero_core("ball radius 0: generic dual path brackets the expectile");
  Property linear_limit("delta 1e6 linear expectile within 1e-4 of the classical expectile");
  for (const auto& [name, d] : priors) {
    for (double alpha : levels) {
      ball_zero.run(
          [&] {
            const double robust = robust_expectile_ball(d, alpha, 0.0);
            const double classical = expectile(d, alpha);
            ball_zero.expect(close(robust, classical, 1e-8), [&] {
              return str(name, " alpha=", alpha, ": robust ", robust, " classical ", classical);
            });
          },
          name);
      ball_zero_core.run(
          [&] {
            const Interval q = robust_generalized_quantile(d, LossSpec::asym_quadratic(alpha),
                                                           CostExponent(2.0), Penalization::ball(0.0));
            const double classical = expectile(d, alpha);
            ball_zero_core.expect(q.contains(classical, 1e-6), [&] {
              return str(name, " alpha=", alpha, ": interval [", q.lower, ", ", q.upper,
                         "] expectile ", classical);
            });
          },
          name);
      linear_limit.run(
          [&] {
            const double robust = robust_expectile_linear(d, alpha, 1e6);
            const double classical = expectile(d, alpha);
            linear_limit.expect(close(robust, classical, 1e-4), [&] {
              return str(name, " alpha=", alpha, ": robust ", robust, " classical ", classical);
            });
          },
          name);
    }
  }

  Property symmetric("alpha 1/2 linear expectile equals the mean within 1e-10");
  std::vector<std::pair<std::string, PriorDistribution>> symmetric_priors = priors;
  for (int k = 0; k < 10; ++k) {
    symmetric_priors.emplace_back(str("empirical #", k), random_empirical(rng, 50));
  }
  for (const auto& [name, d] : symmetric_priors) {
    for (double delta : {0.6, 1.0, 10.0}) {
      symmetric.run(
          [&] {
            const double robust = robust_expectile_linear(d, 0.5, delta);
            const double mu = mean(d);
            symmetric.expect(close(robust, mu, 1e-10), [&] {
              return str(name, " delta=", delta, ": robust ", robust, " mean ", mu);
            });
          },
          name);
    }
  }
  return finish(3, "reductions", {ball_zero, ball_zero_core, linear_limit, symmetric}, timer, 0.0);
}

CriterionReport adjusted_level(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property identity("linear robust expectile equals the expectile at the adjusted level");
  for (int k = 0; k < 100; ++k) {
    const PriorDistribution d = random_prior(rng);
    const double alpha = uniform(rng, 0.05, 0.95);
    const double delta = std::max(alpha, 1.0 - alpha) * (1.0 + uniform(rng, 0.01, 10.0));
    identity.run(
        [&] {
          const double robust = robust_expectile_linear(d, alpha, delta);
          const double level = ExpectileLevel::linear(alpha, delta).adjusted_alpha;
          const double classical = expectile(d, level);
          identity.expect(close(robust, classical, 1e-9), [&] {
            return str(d.describe(), " alpha=", alpha, " delta=", delta, ": robust ", robust,
                       " expectile(", level, ") ", classical);
          });
        },
        str(d.describe(), " alpha=", alpha, " delta=", delta));
  }
  return finish(4, "adjusted-level identity", {identity}, timer, 0.0);
}

CriterionReport coherence(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property translation("translation invariance");
  Property homogeneity("positive homogeneity");
  Property monotone("monotonicity");
  Property subadditive("subadditivity");
  const double levels[] = {0.6, 0.75, 0.9};
  const double deltas[] = {1.0, 2.0, 10.0};
  const double tol = 1e-8;
  for (int k = 0; k < 200; ++k) {
    const Pair pair = random_pair(rng, 40);
    const PriorDistribution x = make_empirical(pair.x, pair.p);
    const PriorDistribution y = make_empirical(pair.y, pair.p);
    const PriorDistribution sum = make_empirical(combine(pair.x, pair.y, 1.0, 1.0), pair.p);
    std::vector<double> above = pair.x;
    for (double& v : above) v += std::abs(uniform(rng, 0.0, 2.0));
    const PriorDistribution dominating = make_empirical(above, pair.p);
    const double shift = uniform(rng, -5.0, 5.0);
    const double delta = deltas[k % 3];
    for (double alpha : levels) {
      const std::string ctx = str("pair #", k, " alpha=", alpha, " delta=", delta);
      auto e = [&](const PriorDistribution& d) { return robust_expectile_linear(d, alpha, delta); };
      translation.run(
          [&] {
            const double lhs = e(x.affine(1.0, shift));
            const double rhs = e(x) + shift;
            translation.expect(close(lhs, rhs, tol),
                               [&] { return str(ctx, " c=", shift, ": ", lhs, " vs ", rhs); });
          },
          ctx);
      for (double t : {0.0, 0.5, 2.0, 7.0}) {
        homogeneity.run(
            [&] {
              const double lhs = e(x.affine(t, 0.0));
              const double rhs = t * e(x);
              homogeneity.expect(close(lhs, rhs, tol),
                                 [&] { return str(ctx, " t=", t, ": ", lhs, " vs ", rhs); });
            },
            ctx);
      }
      monotone.run(
          [&] {
            const double lo = e(x);
            const double hi = e(dominating);
            monotone.expect(lo <= hi + tol, [&] { return str(ctx, ": ", lo, " > ", hi); });
          },
          ctx);
      subadditive.run(
          [&] {
            const double lhs = e(sum);
            const double rhs = e(x) + e(y);
            subadditive.expect(lhs <= rhs + tol, [&] { return str(ctx, ": ", lhs, " > ", rhs); });
          },
          ctx);
    }
  }
  return finish(5, "coherence of the linear robust expectile",
                {translation, homogeneity, monotone, subadditive}, timer, 20.0);
}

namespace {

// Convex increasing losses used by the OCE suite, with penalizations that
// keep the robust value finite.
struct OceCase {
  std::string label;
  LossSpec loss;
  LossSpec larger_loss;
  CostExponent p;
  Penalization phi;
  Penalization larger_phi;
};

OceCase random_oce_case(std::mt19937_64& rng, int k) {
  auto kink = [](double kappa) {
    return LossSpec::generalized_quantile(0.5, PowerLoss{2.0 * kappa, 1.0}, PowerLoss{0.0, 1.0});
  };
  auto square = [](double a) {
    return LossSpec::generalized_quantile(0.5, PowerLoss{2.0 * a, 2.0}, PowerLoss{0.0, 2.0});
  };
  const bool quadratic = k % 2 == 1;
  const bool ball = (k / 2) % 2 == 1;
  if (!quadratic) {
    const double kappa = uniform(rng, 1.2, 3.0);
    const double bigger = kappa * 1.5;
    if (ball) {
      const double r = uniform(rng, 0.05, 1.0);
      return {str("kappa x^+ (kappa=", kappa, "), ball(", r, ")"), kink(kappa), kink(bigger),
              CostExponent(1.0), Penalization::ball(r), Penalization::ball(0.5 * r)};
    }
    const double delta = bigger + uniform(rng, 0.1, 2.0);
    return {str("kappa x^+ (kappa=", kappa, "), linear(", delta, ")"), kink(kappa), kink(bigger),
            CostExponent(1.0), Penalization::linear(delta), Penalization::linear(2.0 * delta)};
  }
  const double a = uniform(rng, 0.2, 1.5);
  const double bigger = a * 1.5;
  if (ball) {
    const double r = uniform(rng, 0.05, 1.0);
    return {str("a (x^+)^2 (a=", a, "), ball(", r, ")"), square(a), square(bigger),
            CostExponent(2.0), Penalization::ball(r), Penalization::ball(0.5 * r)};
  }
  const double delta = bigger + uniform(rng, 0.1, 2.0);
  return {str("a (x^+)^2 (a=", a, "), linear(", delta, ")"), square(a), square(bigger),
          CostExponent(2.0), Penalization::linear(delta), Penalization::linear(2.0 * delta)};
}

}  // namespace

CriterionReport oce_axioms(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  const double tol = 1e-7;
  Property translation("OCE translation invariance");
  Property monotone("OCE monotonicity");
  Property convex("OCE convexity under comonotone mixing");
  Property loss_order("larger loss gives larger OCE");
  Property phi_order("larger penalization gives smaller OCE, never below the classical OCE");
  Property spot("OCE of 1 + x^+ at zero equals 1");

  for (int k = 0; k < 50; ++k) {
    const OceCase c = random_oce_case(rng, k);
    Pair pair = random_pair(rng, 30);
    std::vector<double> xs = pair.x;
    std::vector<double> zs = pair.y;
    std::sort(xs.begin(), xs.end());
    std::sort(zs.begin(), zs.end());
    const PriorDistribution x = make_empirical(pair.x, pair.p);
    std::vector<double> above = pair.x;
    for (double& v : above) v += std::abs(uniform(rng, 0.0, 2.0));
    const PriorDistribution y = make_empirical(above, pair.p);
    const PriorDistribution xc = make_empirical(xs, pair.p);
    const PriorDistribution zc = make_empirical(zs, pair.p);
    const double t = uniform(rng, 0.05, 0.95);
    const PriorDistribution mix = make_empirical(combine(xs, zs, t, 1.0 - t), pair.p);
    const double shift = uniform(rng, -5.0, 5.0);
    const std::string ctx = str("case #", k, " ", c.label);
    auto oce = [&](const PriorDistribution& d, const LossSpec& l, const Penalization& phi) {
      return robust_oce(d, l, c.p, phi).value;
    };

    translation.run(
        [&] {
          const double lhs = oce(x.affine(1.0, shift), c.loss, c.phi);
          const double rhs = oce(x, c.loss, c.phi) + shift;
          translation.expect(close(lhs, rhs, tol),
                             [&] { return str(ctx, " C=", shift, ": ", lhs, " vs ", rhs); });
        },
        ctx);
    monotone.run(
        [&] {
          const double lo = oce(x, c.loss, c.phi);
          const double hi = oce(y, c.loss, c.phi);
          monotone.expect(lo <= hi + tol, [&] { return str(ctx, ": ", lo, " > ", hi); });
        },
        ctx);
    convex.run(
        [&] {
          const double lhs = oce(mix, c.loss, c.phi);
          const double rhs = t * oce(xc, c.loss, c.phi) + (1.0 - t) * oce(zc, c.loss, c.phi);
          convex.expect(lhs <= rhs + tol,
                        [&] { return str(ctx, " t=", t, ": ", lhs, " > ", rhs); });
        },
        ctx);
    loss_order.run(
        [&] {
          const double lo = oce(x, c.loss, c.phi);
          const double hi = oce(x, c.larger_loss, c.phi);
          loss_order.expect(lo <= hi + tol, [&] { return str(ctx, ": ", lo, " > ", hi); });
        },
        ctx);
    phi_order.run(
        [&] {
          const double small_phi = oce(x, c.loss, c.phi);
          const double big_phi = oce(x, c.loss, c.larger_phi);
          const double classical = classical_oce(x, c.loss).value;
          phi_order.expect(big_phi <= small_phi + tol && classical <= big_phi + tol, [&] {
            return str(ctx, ": phi ", small_phi, ", larger phi ", big_phi, ", classical ",
                       classical);
          });
        },
        ctx);
  }

  spot.run(
      [&] {
        const LossSpec l =
            LossSpec::custom([](double v) { return 1.0 + std::max(v, 0.0); }, 1.0, 1.0, "1 + x^+");
        const RobustValue r = robust_oce(PriorDistribution::point_mass(0.0), l, CostExponent(1.0),
                                         Penalization::linear(2.0));
        spot.expect(close(r.value, 1.0, 1e-9), [&] { return str("value ", r.value); });
      },
      "spot value");
  return finish(6, "OCE axioms and orderings",
                {translation, monotone, convex, loss_order, phi_order, spot}, timer, 0.0);
}

CriterionReport transforms(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property oracle("closed-form transforms match the numeric supremum within 1e-4");
  Property dominance("transform dominates the loss");
  Property monotone_x("transform of an increasing loss is nondecreasing in x");
  Property joint("transform is jointly convex in (x, lambda)");
  Property monotone_lambda("transform is nonincreasing in lambda");

  const double levels[] = {0.25, 0.5, 0.75};
  for (int k = 0; k < 200; ++k) {
    const double alpha = levels[k % 3];
    const bool quadratic = (k / 3) % 2 == 1;
    const LossSpec l = quadratic ? LossSpec::asym_quadratic(alpha) : LossSpec::pinball(alpha);
    const CostExponent p(quadratic ? 2.0 : 1.0);
    const double thr = finiteness_threshold(l, p);
    const double x = uniform(rng, -5.0, 5.0);
    // One probe in ten sits below the threshold, one on it.
    double lambda = thr + uniform(rng, 0.05, 3.0);
    if (k % 10 == 0) lambda = thr * uniform(rng, 0.1, 0.99);
    if (k % 10 == 5) lambda = thr;
    const std::string ctx = str(l.describe(), " p=", p.p, " lambda=", lambda, " x=", x);

    oracle.run(
        [&] {
          const double closed = lambda_c_transform(l, p, lambda, x);
          const double numeric = numeric_lambda_c_transform(l, p, lambda, x);
          const bool ok = (std::isfinite(closed) && std::isfinite(numeric))
                              ? close(closed, numeric, 1e-4)
                              : (closed == kInf && numeric == kInf) ||
                                    (std::isfinite(closed) != std::isfinite(numeric) &&
                                     lambda == thr);
          oracle.expect(ok, [&] { return str(ctx, ": closed ", closed, " numeric ", numeric); });
        },
        ctx);
    dominance.run(
        [&] {
          const double v = lambda_c_transform(l, p, lambda, x);
          dominance.expect(v >= l(x) - 1e-12, [&] { return str(ctx, ": ", v, " < ", l(x)); });
        },
        ctx);
    monotone_lambda.run(
        [&] {
          const double v1 = lambda_c_transform(l, p, lambda, x);
          const double v2 = lambda_c_transform(l, p, lambda + uniform(rng, 0.01, 2.0), x);
          monotone_lambda.expect(v2 <= v1 + 1e-12, [&] { return str(ctx, ": ", v2, " > ", v1); });
        },
        ctx);
    joint.run(
        [&] {
          const double x2 = uniform(rng, -5.0, 5.0);
          const double l1 = thr + uniform(rng, 0.0, 3.0);
          const double l2 = thr + uniform(rng, 0.0, 3.0);
          const double a = lambda_c_transform(l, p, l1, x);
          const double b = lambda_c_transform(l, p, l2, x2);
          const double mid = lambda_c_transform(l, p, 0.5 * (l1 + l2), 0.5 * (x + x2));
          const double rhs = 0.5 * a + 0.5 * b;
          joint.expect(mid <= rhs + 1e-9 * std::max(1.0, std::abs(rhs)) || rhs == kInf, [&] {
            return str(ctx, " with (", x2, ", ", l2, ") lambda1=", l1, ": midpoint ", mid,
                       " > ", rhs);
          });
        },
        ctx);

    // Increasing convex losses for the monotonicity part.
    const double kappa = uniform(rng, 0.5, 3.0);
    const LossSpec inc = quadratic ? LossSpec::generalized_quantile(
                                         0.5, PowerLoss{2.0 * kappa, 2.0}, PowerLoss{0.0, 2.0})
                                   : LossSpec::generalized_quantile(
                                         0.5, PowerLoss{2.0 * kappa, 1.0}, PowerLoss{0.0, 1.0});
    monotone_x.run(
        [&] {
          const double lam = finiteness_threshold(inc, p) + uniform(rng, 0.05, 3.0);
          const double dx = uniform(rng, 0.0, 2.0);
          const double v1 = lambda_c_transform(inc, p, lam, x);
          const double v2 = lambda_c_transform(inc, p, lam, x + dx);
          const double n1 = numeric_lambda_c_transform(inc, p, lam, x);
          const double n2 = numeric_lambda_c_transform(inc, p, lam, x + dx);
          monotone_x.expect(v1 <= v2 + 1e-12 && n1 <= n2 + 1e-6, [&] {
            return str(inc.describe(), " lambda=", lam, " x=", x, " dx=", dx, ": closed ", v1,
                       " -> ", v2, ", numeric ", n1, " -> ", n2);
          });
        },
        ctx);
  }
  return finish(7, "transform certification",
                {oracle, dominance, monotone_x, joint, monotone_lambda}, timer, 0.0);
}

CriterionReport weak_duality(std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Property duality("perturbed primal value never exceeds the dual value");
  for (int k = 0; k < 100; ++k) {
    const double cost_p = k % 2 == 0 ? 1.0 : 2.0;
    const CostExponent p(cost_p);
    const double alpha = uniform(rng, 0.1, 0.9);
    const LossSpec h = cost_p == 1.0 ? LossSpec::pinball(alpha) : LossSpec::asym_quadratic(alpha);
    const double thr = finiteness_threshold(h, p);
    const bool ball = (k / 2) % 2 == 1;
    const Penalization phi = ball ? Penalization::ball(uniform(rng, 0.05, 1.0))
                                  : Penalization::linear(thr + uniform(rng, 0.01, 3.0));

    const int n = uniform_int(rng, 1, 20);
    const std::vector<double> values = random_values(rng, n);
    const std::vector<double> weights = random_weights(rng, n, k % 3 == 0);
    const PriorDistribution base = make_empirical(values, weights);
    const double m = uniform(rng, -3.0, 3.0);

    // Perturb every atom; under the ball penalty shrink the move until the
    // transport cost fits inside the ball so the primal value is finite.
    std::vector<double> moves(values.size());
    for (double& s : moves) s = uniform(rng, -1.5, 1.5);
    double scale = 1.0;
    PriorDistribution moved = base;
    double cost = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      std::vector<double> shifted = values;
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += scale * moves[i];
      moved = make_empirical(shifted, weights);
      cost = wasserstein_1d(base, moved, p);
      if (!ball || evaluate(phi, cost) < kInf) break;
      scale *= 0.5;
    }
    const std::string ctx = str("case #", k, " ", h.describe(), " p=", cost_p, " ",
                                phi.describe(), " m=", m);
    duality.run(
        [&] {
          double primal = 0.0;
          for (const Atom& a : moved.atoms()) primal += a.weight * h(a.value - m);
          primal -= evaluate(phi, cost);
          const double dual = robust_functional(base, h, p, phi, m);
          duality.expect(primal <= dual + 1e-9, [&] {
            return str(ctx, ": primal ", primal, " (cost ", cost, ") > dual ", dual);
          });
        },
        ctx);
  }
  return finish(8, "weak duality", {duality}, timer, 0.0);
}

CriterionReport trends() {
  Timer timer;
  const std::vector<std::pair<std::string, PriorDistribution>> priors{
      {"normal(0,1)", PriorDistribution::normal(0.0, 1.0)},
      {"exponential(1)", PriorDistribution::exponential(1.0)},
      {"student-t(5)", PriorDistribution::student_t(5.0)}};
  const double tol = 1e-9;
  Property linear_upper("linear: alpha > 1/2 nonincreasing in delta, above expectile above mean");
  Property linear_lower("linear: alpha < 1/2 nondecreasing in delta, below expectile below mean");
  Property ball_trend("ball: moves away from the mean as the radius grows");
  Property alpha_sweep("all three measures increase with alpha at fixed delta");

  auto check_rows = [&](const std::string& name, const SweepResult& result, PenaltyFamily family) {
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const SweepRow& r = result.rows[i];
      const std::string ctx = str(name, " ", to_string(family), " alpha=", r.alpha,
                                  " delta=", r.delta);
      Property& target =
          family == PenaltyFamily::ball ? ball_trend : (r.alpha > 0.5 ? linear_upper : linear_lower);
      if (!r.converged) {
        target.expect(false, [&] { return ctx + ": solver did not converge"; });
        continue;
      }
      const bool has_previous = i > 0 && result.rows[i - 1].alpha == r.alpha;
      const double prev = has_previous ? result.rows[i - 1].robust_value : 0.0;
      if (family == PenaltyFamily::linear) {
        if (r.alpha > 0.5) {
          const bool ok = (!has_previous || r.robust_value <= prev + tol) &&
                          r.robust_value >= r.classical_expectile - tol &&
                          r.classical_expectile >= r.mean - tol;
          target.expect(ok, [&] {
            return str(ctx, ": robust ", r.robust_value, " (previous ", prev, ") expectile ",
                       r.classical_expectile, " mean ", r.mean);
          });
        } else {
          const bool ok = (!has_previous || r.robust_value >= prev - tol) &&
                          r.robust_value <= r.classical_expectile + tol &&
                          r.classical_expectile <= r.mean + tol;
          target.expect(ok, [&] {
            return str(ctx, ": robust ", r.robust_value, " (previous ", prev, ") expectile ",
                       r.classical_expectile, " mean ", r.mean);
          });
        }
      } else {
        const bool ok = !has_previous || (r.alpha > 0.5 ? r.robust_value >= prev - tol
                                                        : r.robust_value <= prev + tol);
        target.expect(ok, [&] {
          return str(ctx, ": robust ", r.robust_value, " previous ", prev);
        });
      }
    }
  };

  const std::vector<double> alphas{0.1, 0.3, 0.7, 0.9};
  for (const auto& [name, d] : priors) {
    const std::vector<double> linear_deltas = parse_grid("1:10:0.5", "delta");
    const std::vector<double> ball_deltas = parse_grid("0:2:0.1", "delta");
    try {
      check_rows(name, run_sweep({alphas, linear_deltas, PenaltyFamily::linear, d}),
                 PenaltyFamily::linear);
      check_rows(name, run_sweep({alphas, ball_deltas, PenaltyFamily::ball, d}),
                 PenaltyFamily::ball);
    } catch (const std::exception& e) {
      linear_upper.expect(false, [&] { return name + " sweep threw: " + e.what(); });
    }

    alpha_sweep.run(
        [&] {
          double prev_linear = -kInf;
          double prev_ball = -kInf;
          double prev_classical = -kInf;
          for (int a = 1; a <= 9; ++a) {
            const double alpha = 0.1 * a;
            const double lin = robust_expectile_linear(d, alpha, 1.0);
            const double bal = robust_expectile_ball(d, alpha, 0.5);
            const double cls = expectile(d, alpha);
            alpha_sweep.expect(lin >= prev_linear - tol && bal >= prev_ball - tol &&
                                   cls >= prev_classical - tol,
                               [&] {
                                 return str(name, " alpha=", alpha, ": linear ", lin, " ball ",
                                            bal, " expectile ", cls);
                               });
            prev_linear = lin;
            prev_ball = bal;
            prev_classical = cls;
          }
        },
        name);
  }
  return finish(9, "sweep trends", {linear_upper, linear_lower, ball_trend, alpha_sweep}, timer,
                10.0);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "duality", "transforms",
                                              "reductions", "trends", "all"};
  return names;
}

std::vector<CriterionReport> run_suite(std::string_view suite, std::uint64_t seed) {
  std::vector<CriterionReport> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "transforms") {
    known = true;
    out.push_back(transforms(seed));
  }
  if (all || suite == "reductions") {
    known = true;
    out.push_back(var_degeneracy(seed));
    out.push_back(reductions(seed));
  }
  if (all || suite == "duality") {
    known = true;
    out.push_back(dual_representation(seed));
    out.push_back(adjusted_level(seed));
    out.push_back(weak_duality(seed));
  }
  if (all || suite == "axioms") {
    known = true;
    out.push_back(coherence(seed));
    out.push_back(oce_axioms(seed));
  }
  if (all || suite == "trends") {
    known = true;
    out.push_back(trends());
  }
  if (!known) throw InvalidInput("suite", "unknown suite '" + std::string(suite) + "'");
  return out;
}

void print_checks(std::ostream& out, const CriterionReport& report) {
  for (const CheckResult& c : report.checks) {
    out << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
  }
  if (!report.within_time()) {
    out << report.name << " runtime: FAIL (" << report.seconds << " s, limit "
        << report.time_limit << " s)\n";
  }
}

}  // namespace rrisk::verify
