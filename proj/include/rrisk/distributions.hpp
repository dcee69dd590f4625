#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rrisk {

struct Atom {
  double value;
  double weight;
};

struct EmpiricalLaw {
  std::vector<Atom> atoms;  // sorted ascending, ties merged
};

struct NormalLaw {
  double mean;
  double stddev;
};

struct ExponentialLaw {
  double rate;
};

struct StudentTLaw {
  double dof;
  double location;
  double scale;
};

enum class Family { empirical, normal, exponential, student_t };

/// Baseline law of a loss position. Immutable after construction; every
/// risk measure in the library depends on the position only through this.
class PriorDistribution {
 public:
  using Law = std::variant<EmpiricalLaw, NormalLaw, ExponentialLaw, StudentTLaw>;

  /// Atoms need not be sorted; equal values are merged. Weights must be
  /// strictly positive and sum to one within 1e-12.
  static PriorDistribution empirical(std::vector<Atom> atoms);
  static PriorDistribution empirical_uniform(std::span<const double> values);
  static PriorDistribution point_mass(double value);
  static PriorDistribution normal(double mean, double stddev);
  static PriorDistribution exponential(double rate);
  static PriorDistribution student_t(double dof, double location = 0.0,
                                     double scale = 1.0);

  Family family() const noexcept;
  bool is_empirical() const noexcept { return family() == Family::empirical; }
  const Law& law() const noexcept { return law_; }

  /// Throws InvalidInput unless the law is empirical.
  std::span<const Atom> atoms() const;

  /// Law of `scale * X + shift`. Exponential laws only admit positive scale
  /// with zero shift.
  PriorDistribution affine(double scale, double shift) const;

  std::string describe() const;

 private:
  explicit PriorDistribution(Law law) : law_(std::move(law)) {}
  Law law_;
};

/// E[((X - m)^+)^power] for power in {1, 2}.
double partial_moment_plus(const PriorDistribution& d, double m, int power);
/// E[((m - X)^+)^power] for power in {1, 2}.
double partial_moment_minus(const PriorDistribution& d, double m, int power);

double mean(const PriorDistribution& d);

/// Smallest q with P(X <= q) >= alpha.
double quantile(const PriorDistribution& d, double alpha);

/// P(X <= x).
double cdf(const PriorDistribution& d, double x);
/// P(X < x).
double cdf_left(const PriorDistribution& d, double x);

/// A spread proxy used to seed search brackets (standard deviation when it
/// exists, otherwise the scale parameter; half the range for empirical laws).
double spread(const PriorDistribution& d);

/// E[f(X)]. Exact sum for empirical laws, adaptive quadrature otherwise.
double expectation(const PriorDistribution& d,
                   const std::function<double(double)>& f);

std::vector<double> sample(const PriorDistribution& d, std::size_t n,
                           std::uint64_t seed);

}  // namespace rrisk
