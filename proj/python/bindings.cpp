#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "rrisk/distributions.hpp"
#include "rrisk/dual_oracle.hpp"
#include "rrisk/errors.hpp"
#include "rrisk/losses.hpp"
#include "rrisk/penalizations.hpp"
#include "rrisk/risk_measures.hpp"
#include "rrisk/robust_core.hpp"

namespace py = pybind11;
using namespace rrisk;

namespace {

std::vector<Atom> to_atoms(const std::vector<std::pair<double, double>>& points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const auto& [v, w] : points) atoms.push_back({v, w});
  return atoms;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributionally robust risk measures under transport-cost uncertainty";

  // Later registrations are tried first, so the base class goes first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base);
  py::register_exception<MomentUndefined>(m, "MomentUndefined", base);
  py::register_exception<Infeasible>(m, "Infeasible", base);
  py::register_exception<NoConvergence>(m, "NoConvergence", base);
  py::register_exception<DeltaTooSmall>(m, "DeltaTooSmall", base);
  py::register_exception<UncertifiedGrowth>(m, "UncertifiedGrowth", base);

  py::class_<PriorDistribution>(m, "PriorDistribution")
      .def_static("empirical",
                  [](const std::vector<std::pair<double, double>>& points) {
                    return PriorDistribution::empirical(to_atoms(points));
                  },
                  py::arg("points"), "Weighted atoms given as (value, weight) pairs.")
      .def_static("empirical_uniform",
                  [](const std::vector<double>& values) {
                    return PriorDistribution::empirical_uniform(values);
                  },
                  py::arg("values"))
      .def_static("point_mass", &PriorDistribution::point_mass, py::arg("value"))
      .def_static("normal", &PriorDistribution::normal, py::arg("mean"), py::arg("stddev"))
      .def_static("exponential", &PriorDistribution::exponential, py::arg("rate"))
      .def_static("student_t", &PriorDistribution::student_t, py::arg("dof"),
                  py::arg("location") = 0.0, py::arg("scale") = 1.0)
      .def("atoms",
           [](const PriorDistribution& d) {
             std::vector<std::pair<double, double>> out;
             for (const auto& a : d.atoms()) out.emplace_back(a.value, a.weight);
             return out;
           })
      .def("affine", &PriorDistribution::affine, py::arg("scale"), py::arg("shift"))
      .def("__repr__", &PriorDistribution::describe);

  m.def("partial_moment_plus", &partial_moment_plus, py::arg("d"), py::arg("m"), py::arg("power"));
  m.def("partial_moment_minus", &partial_moment_minus, py::arg("d"), py::arg("m"),
        py::arg("power"));
  m.def("mean", &mean, py::arg("d"));
  m.def("quantile", &quantile, py::arg("d"), py::arg("alpha"));
  m.def("sample", &sample, py::arg("d"), py::arg("n"), py::arg("seed"));

  py::class_<CostExponent>(m, "CostExponent")
      .def(py::init<double>(), py::arg("p"))
      .def_readonly("p", &CostExponent::p);

  py::class_<LossSpec>(m, "LossSpec")
      .def_static("pinball", &LossSpec::pinball, py::arg("alpha"))
      .def_static("asym_quadratic", &LossSpec::asym_quadratic, py::arg("alpha"))
      .def_static("generalized_quantile",
                  [](double alpha, double c1, double k1, double c2, double k2) {
                    return LossSpec::generalized_quantile(alpha, {c1, k1}, {c2, k2});
                  },
                  py::arg("alpha"), py::arg("c1"), py::arg("k1"), py::arg("c2"), py::arg("k2"))
      .def_static("custom",
                  [](py::function f, double constant, double power, std::string name) {
                    return LossSpec::custom(
                        [f](double x) {
                          py::gil_scoped_acquire gil;
                          return f(x).cast<double>();
                        },
                        constant, power, std::move(name));
                  },
                  py::arg("evaluator"), py::arg("growth_constant"), py::arg("growth_power"),
                  py::arg("name") = "custom")
      .def("__call__", &LossSpec::operator(), py::arg("x"))
      .def("__repr__", &LossSpec::describe);

  auto cost = [](double p) { return CostExponent(p); };
  m.def("lambda_c_transform",
        [cost](const LossSpec& l, double p, double lambda, double x) {
          return lambda_c_transform(l, cost(p), lambda, x);
        },
        py::arg("loss"), py::arg("p"), py::arg("lam"), py::arg("x"));
  m.def("finiteness_threshold",
        [cost](const LossSpec& l, double p) { return finiteness_threshold(l, cost(p)); },
        py::arg("loss"), py::arg("p"));

  py::class_<Penalization>(m, "Penalization")
      .def_static("linear", &Penalization::linear, py::arg("delta"))
      .def_static("ball", &Penalization::ball, py::arg("delta"))
      .def_static("piecewise",
                  [](const std::vector<std::pair<double, double>>& bps) {
                    std::vector<Breakpoint> out;
                    for (const auto& [x, s] : bps) out.push_back({x, s});
                    return Penalization::piecewise(std::move(out));
                  },
                  py::arg("breakpoints"))
      .def("__repr__", &Penalization::describe);
  m.def("conjugate", &conjugate, py::arg("phi"), py::arg("lam"));
  m.def("evaluate", &evaluate, py::arg("phi"), py::arg("x"));

  py::class_<Interval>(m, "Interval")
      .def_readonly("lower", &Interval::lower)
      .def_readonly("upper", &Interval::upper)
      .def("__repr__", [](const Interval& i) {
        return "Interval(" + std::to_string(i.lower) + ", " + std::to_string(i.upper) + ")";
      });

  py::class_<SearchOptions>(m, "SearchOptions")
      .def(py::init<>())
      .def_readwrite("tolerance", &SearchOptions::tolerance)
      .def_readwrite("max_iterations", &SearchOptions::max_iterations)
      .def_readwrite("max_doublings", &SearchOptions::max_doublings)
      .def_readwrite("restrict_to_support", &SearchOptions::restrict_to_support);

  py::class_<RobustValue>(m, "RobustValue")
      .def_readonly("value", &RobustValue::value)
      .def_readonly("argmin_m", &RobustValue::argmin_m)
      .def_readonly("argmin_lambda", &RobustValue::argmin_lambda)
      .def_readonly("evaluations", &RobustValue::evaluations)
      .def_readonly("converged", &RobustValue::converged)
      .def_readonly("lambda_on_boundary", &RobustValue::lambda_on_boundary);

  m.def("robust_functional",
        [cost](const PriorDistribution& d, const LossSpec& l, double p, const Penalization& phi,
               double m_) { return robust_functional(d, l, cost(p), phi, m_); },
        py::arg("d"), py::arg("loss"), py::arg("p"), py::arg("phi"), py::arg("m"));
  m.def("robust_oce",
        [cost](const PriorDistribution& d, const LossSpec& l, double p, const Penalization& phi,
               const SearchOptions& s) { return robust_oce(d, l, cost(p), phi, s); },
        py::arg("d"), py::arg("loss"), py::arg("p"), py::arg("phi"),
        py::arg("search") = SearchOptions{});
  m.def("classical_oce", &classical_oce, py::arg("d"), py::arg("loss"),
        py::arg("search") = SearchOptions{});

  m.def("var", &var, py::arg("d"), py::arg("alpha"));
  m.def("expectile", &expectile, py::arg("d"), py::arg("alpha"));
  m.def("robust_generalized_quantile",
        [cost](const PriorDistribution& d, const LossSpec& h, double p, const Penalization& phi,
               const SearchOptions& s) {
          return robust_generalized_quantile(d, h, cost(p), phi, s);
        },
        py::arg("d"), py::arg("loss"), py::arg("p"), py::arg("phi"),
        py::arg("search") = SearchOptions{});
  m.def("robust_expectile_linear", &robust_expectile_linear, py::arg("d"), py::arg("alpha"),
        py::arg("delta"));
  m.def("robust_expectile_ball", &robust_expectile_ball, py::arg("d"), py::arg("alpha"),
        py::arg("delta"));
  m.def("adjusted_alpha",
        [](double alpha, double delta) { return ExpectileLevel::linear(alpha, delta).adjusted_alpha; },
        py::arg("alpha"), py::arg("delta"));

  py::enum_<Direction>(m, "Direction")
      .value("maximize", Direction::maximize)
      .value("minimize", Direction::minimize);
  m.def("dual_expectile_max",
        [](const PriorDistribution& d, double alpha, double delta, Direction dir) {
          return dual_expectile_max(d, DensityBand::for_linear_expectile(alpha, delta), dir);
        },
        py::arg("d"), py::arg("alpha"), py::arg("delta"),
        py::arg("direction") = Direction::maximize);
  m.def("wasserstein_1d",
        [cost](const PriorDistribution& a, const PriorDistribution& b, double p) {
          return wasserstein_1d(a, b, cost(p));
        },
        py::arg("a"), py::arg("b"), py::arg("p"));
}
