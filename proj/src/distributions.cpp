#include "rrisk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_power(int power) {
  if (power != 1 && power != 2) {
    throw InvalidInput("power", "partial moments are defined for power 1 or 2");
  }
}

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}
double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double std_normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// E[((Z - z)^+)^power] for a standard normal Z.
double normal_upper_moment(double z, int power) {
  const double pdf = std_normal_pdf(z);
  const double sf = std_normal_sf(z);
  if (power == 1) return pdf - z * sf;
  return (1.0 + z * z) * sf - z * pdf;
}

// E[((T - z)^+)^power] for a standard Student-t T with `dof` degrees of
// freedom, from the identities
//   int_z^inf t f(t) dt   = (dof + z^2) f(z) / (dof - 1)
//   int_z^inf t^2 f(t) dt = (dof Q(z) + z (dof + z^2) f(z)) / (dof - 2)
// obtained by differentiating (dof + t^2) f(t) and t (dof + t^2) f(t).
double student_upper_moment(double dof, double z, int power) {
  const boost::math::students_t_distribution<double> t(dof);
  const double pdf = boost::math::pdf(t, z);
  const double sf = boost::math::cdf(boost::math::complement(t, z));
  const double first = (dof + z * z) * pdf / (dof - 1.0);
  if (power == 1) return first - z * sf;
  const double second = (dof * sf + z * (dof + z * z) * pdf) / (dof - 2.0);
  return second - 2.0 * z * first + z * z * sf;
}

void require_student_moment(const StudentTLaw& t, int power) {
  if (power == 1 && !(t.dof > 1.0)) {
    throw MomentUndefined("Student-t first moment requires dof > 1");
  }
  if (power == 2 && !(t.dof > 2.0)) {
    throw MomentUndefined("Student-t second moment requires dof > 2");
  }
}

double clamp_nonnegative(double v) { return std::isnan(v) || v < 0.0 ? 0.0 : v; }

}  // namespace

PriorDistribution PriorDistribution::empirical(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InvalidInput("atoms", "empirical law needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value)) throw InvalidInput("value", "atom values must be finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw InvalidInput("weight", "atom weights must be strictly positive");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg << "weights sum to " << total << ", expected 1 within " << kWeightTolerance;
    throw InvalidInput("weight", msg.str());
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  for (auto& a : merged) a.weight /= total;
  return PriorDistribution(EmpiricalLaw{std::move(merged)});
}

PriorDistribution PriorDistribution::empirical_uniform(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("values", "empirical law needs at least one value");
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  const double w = 1.0 / static_cast<double>(values.size());
  for (double v : values) atoms.push_back({v, w});
  // Uniform weights can miss 1 by a few ulps for large n; rescale first.
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  for (auto& a : atoms) a.weight /= total;
  return empirical(std::move(atoms));
}

PriorDistribution PriorDistribution::point_mass(double value) {
  return empirical({{value, 1.0}});
}

PriorDistribution PriorDistribution::normal(double mean, double stddev) {
  if (!std::isfinite(mean)) throw InvalidInput("mean", "must be finite");
  if (!(stddev > 0.0) || !std::isfinite(stddev)) {
    throw InvalidInput("stddev", "must be positive");
  }
  return PriorDistribution(NormalLaw{mean, stddev});
}

PriorDistribution PriorDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidInput("rate", "must be positive");
  return PriorDistribution(ExponentialLaw{rate});
}

PriorDistribution PriorDistribution::student_t(double dof, double location, double scale) {
  if (!(dof > 0.0) || !std::isfinite(dof)) throw InvalidInput("dof", "must be positive");
  if (!std::isfinite(location)) throw InvalidInput("location", "must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("scale", "must be positive");
  return PriorDistribution(StudentTLaw{dof, location, scale});
}

Family PriorDistribution::family() const noexcept {
  return static_cast<Family>(law_.index());
}

std::span<const Atom> PriorDistribution::atoms() const {
  const auto* e = std::get_if<EmpiricalLaw>(&law_);
  if (e == nullptr) throw InvalidInput("prior", "operation requires an empirical law");
  return e->atoms;
}

PriorDistribution PriorDistribution::affine(double scale, double shift) const {
  return std::visit(
      overloaded{
          [&](const EmpiricalLaw& e) {
            std::vector<Atom> atoms;
            atoms.reserve(e.atoms.size());
            for (const auto& a : e.atoms) atoms.push_back({scale * a.value + shift, a.weight});
            return empirical(std::move(atoms));
          },
          [&](const NormalLaw& n) {
            if (scale == 0.0) return point_mass(shift);
            return normal(scale * n.mean + shift, std::abs(scale) * n.stddev);
          },
          [&](const ExponentialLaw& x) {
            if (!(scale > 0.0) || shift != 0.0) {
              throw InvalidInput("scale", "exponential laws only admit positive rescaling");
            }
            return exponential(x.rate / scale);
          },
          [&](const StudentTLaw& t) {
            if (scale == 0.0) return point_mass(shift);
            return student_t(t.dof, scale * t.location + shift, std::abs(scale) * t.scale);
          },
      },
      law_);
}

std::string PriorDistribution::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const EmpiricalLaw& e) { out << "empirical(" << e.atoms.size() << " atoms)"; },
                 [&](const NormalLaw& n) { out << "normal(" << n.mean << "," << n.stddev << ")"; },
                 [&](const ExponentialLaw& x) { out << "exponential(" << x.rate << ")"; },
                 [&](const StudentTLaw& t) {
                   out << "student_t(" << t.dof << "," << t.location << "," << t.scale << ")";
                 },
             },
             law_);
  return out.str();
}

double partial_moment_plus(const PriorDistribution& d, double m, int power) {
  require_power(power);
  return std::visit(
      overloaded{
          [&](const EmpiricalLaw& e) {
            double s = 0.0;
            for (const auto& a : e.atoms) {
              const double x = a.value - m;
              if (x > 0.0) s += a.weight * (power == 1 ? x : x * x);
            }
            return s;
          },
          [&](const NormalLaw& n) {
            const double z = (m - n.mean) / n.stddev;
            return clamp_nonnegative(std::pow(n.stddev, power) * normal_upper_moment(z, power));
          },
          [&](const ExponentialLaw& x) {
            const double r = x.rate;
            if (m <= 0.0) {
              const double gap = 1.0 / r - m;
              return power == 1 ? gap : 1.0 / (r * r) + gap * gap;
            }
            const double tail = std::exp(-r * m);
            return power == 1 ? tail / r : 2.0 * tail / (r * r);
          },
          [&](const StudentTLaw& t) {
            require_student_moment(t, power);
            const double z = (m - t.location) / t.scale;
            return clamp_nonnegative(std::pow(t.scale, power) *
                                     student_upper_moment(t.dof, z, power));
          },
      },
      d.law());
}

double partial_moment_minus(const PriorDistribution& d, double m, int power) {
  require_power(power);
  return std::visit(
      overloaded{
          [&](const EmpiricalLaw& e) {
            double s = 0.0;
            for (const auto& a : e.atoms) {
              const double x = m - a.value;
              if (x > 0.0) s += a.weight * (power == 1 ? x : x * x);
            }
            return s;
          },
          [&](const NormalLaw& n) {
            // (m - X)^+ with X ~ N(mu, s) equals (Y - (-m))^+ with Y ~ N(-mu, s).
            const double z = (n.mean - m) / n.stddev;
            return clamp_nonnegative(std::pow(n.stddev, power) * normal_upper_moment(z, power));
          },
          [&](const ExponentialLaw& x) {
            const double r = x.rate;
            if (m <= 0.0) return 0.0;
            const double em1 = std::expm1(-r * m);
            if (power == 1) return clamp_nonnegative(m + em1 / r);
            return clamp_nonnegative(m * m - 2.0 * m / r - 2.0 * em1 / (r * r));
          },
          [&](const StudentTLaw& t) {
            require_student_moment(t, power);
            const double z = (t.location - m) / t.scale;
            return clamp_nonnegative(std::pow(t.scale, power) *
                                     student_upper_moment(t.dof, z, power));
          },
      },
      d.law());
}

double mean(const PriorDistribution& d) {
  return std::visit(overloaded{
                        [](const EmpiricalLaw& e) {
                          double s = 0.0;
                          for (const auto& a : e.atoms) s += a.weight * a.value;
                          return s;
                        },
                        [](const NormalLaw& n) { return n.mean; },
                        [](const ExponentialLaw& x) { return 1.0 / x.rate; },
                        [](const StudentTLaw& t) {
                          if (!(t.dof > 1.0)) throw MomentUndefined("Student-t mean requires dof > 1");
                          return t.location;
                        },
                    },
                    d.law());
}

double quantile(const PriorDistribution& d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha", "must lie in (0, 1)");
  return std::visit(
      overloaded{
          [&](const EmpiricalLaw& e) {
            double cum = 0.0;
            for (const auto& a : e.atoms) {
              cum += a.weight;
              if (cum >= alpha) return a.value;
            }
            return e.atoms.back().value;
          },
          [&](const NormalLaw& n) {
            return n.mean - n.stddev * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * alpha);
          },
          [&](const ExponentialLaw& x) { return -std::log1p(-alpha) / x.rate; },
          [&](const StudentTLaw& t) {
            const boost::math::students_t_distribution<double> st(t.dof);
            return t.location + t.scale * boost::math::quantile(st, alpha);
          },
      },
      d.law());
}

double cdf(const PriorDistribution& d, double x) {
  return std::visit(overloaded{
                        [&](const EmpiricalLaw& e) {
                          double cum = 0.0;
                          for (const auto& a : e.atoms) {
                            if (a.value > x) break;
                            cum += a.weight;
                          }
                          return cum;
                        },
                        [&](const NormalLaw& n) { return std_normal_cdf((x - n.mean) / n.stddev); },
                        [&](const ExponentialLaw& e) {
                          return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x);
                        },
                        [&](const StudentTLaw& t) {
                          const boost::math::students_t_distribution<double> st(t.dof);
                          return boost::math::cdf(st, (x - t.location) / t.scale);
                        },
                    },
                    d.law());
}

double cdf_left(const PriorDistribution& d, double x) {
  if (const auto* e = std::get_if<EmpiricalLaw>(&d.law())) {
    double cum = 0.0;
    for (const auto& a : e->atoms) {
      if (a.value >= x) break;
      cum += a.weight;
    }
    return cum;
  }
  return cdf(d, x);
}

double spread(const PriorDistribution& d) {
  return std::visit(overloaded{
                        [](const EmpiricalLaw& e) {
                          const double half = 0.5 * (e.atoms.back().value - e.atoms.front().value);
                          return half > 0.0 ? half : 1.0;
                        },
                        [](const NormalLaw& n) { return n.stddev; },
                        [](const ExponentialLaw& x) { return 1.0 / x.rate; },
                        [](const StudentTLaw& t) {
                          return t.dof > 2.0 ? t.scale * std::sqrt(t.dof / (t.dof - 2.0)) : t.scale;
                        },
                    },
                    d.law());
}

double expectation(const PriorDistribution& d, const std::function<double(double)>& f) {
  if (const auto* e = std::get_if<EmpiricalLaw>(&d.law())) {
    double s = 0.0;
    for (const auto& a : e->atoms) {
      const double v = f(a.value);
      if (v == kInf) return kInf;
      s += a.weight * v;
    }
    return s;
  }

  bool hit_infinity = false;
  auto guarded = [&](double x, double density) {
    if (density == 0.0 || hit_infinity) return 0.0;
    const double v = f(x);
    if (v == kInf) {
      hit_infinity = true;
      return 0.0;
    }
    return v * density;
  };

  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kMaxDepth = 15;
  constexpr double kTol = 1e-12;
  double result = std::visit(
      overloaded{
          [](const EmpiricalLaw&) { return 0.0; },
          [&](const NormalLaw& n) {
            auto g = [&](double z) {
              return guarded(n.mean + n.stddev * z, std_normal_pdf(z));
            };
            return gauss_kronrod<double, 61>::integrate(g, -kInf, 0.0, kMaxDepth, kTol) +
                   gauss_kronrod<double, 61>::integrate(g, 0.0, kInf, kMaxDepth, kTol);
          },
          [&](const ExponentialLaw& x) {
            auto g = [&](double u) { return guarded(u / x.rate, std::exp(-u)); };
            return gauss_kronrod<double, 61>::integrate(g, 0.0, kInf, kMaxDepth, kTol);
          },
          [&](const StudentTLaw& t) {
            const boost::math::students_t_distribution<double> st(t.dof);
            auto g = [&](double z) {
              return guarded(t.location + t.scale * z, boost::math::pdf(st, z));
            };
            return gauss_kronrod<double, 61>::integrate(g, -kInf, 0.0, kMaxDepth, kTol) +
                   gauss_kronrod<double, 61>::integrate(g, 0.0, kInf, kMaxDepth, kTol);
          },
      },
      d.law());
  return hit_infinity ? kInf : result;
}

std::vector<double> sample(const PriorDistribution& d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("n", "sample size must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  std::visit(overloaded{
                 [&](const EmpiricalLaw& e) {
                   std::vector<double> w;
                   w.reserve(e.atoms.size());
                   for (const auto& a : e.atoms) w.push_back(a.weight);
                   std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
                   for (std::size_t i = 0; i < n; ++i) out.push_back(e.atoms[pick(rng)].value);
                 },
                 [&](const NormalLaw& nl) {
                   std::normal_distribution<double> g(nl.mean, nl.stddev);
                   for (std::size_t i = 0; i < n; ++i) out.push_back(g(rng));
                 },
                 [&](const ExponentialLaw& x) {
                   std::exponential_distribution<double> g(x.rate);
                   for (std::size_t i = 0; i < n; ++i) out.push_back(g(rng));
                 },
                 [&](const StudentTLaw& t) {
                   std::student_t_distribution<double> g(t.dof);
                   for (std::size_t i = 0; i < n; ++i) out.push_back(t.location + t.scale * g(rng));
                 },
             },
             d.law());
  return out;
}

}  // namespace rrisk
