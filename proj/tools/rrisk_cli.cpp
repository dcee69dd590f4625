#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rrisk/errors.hpp"
#include "rrisk/io.hpp"
#include "rrisk/risk_measures.hpp"
#include "rrisk/robust_core.hpp"
#include "rrisk/sweep.hpp"
#include "rrisk/verify.hpp"

namespace {

using namespace rrisk;

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kDomain = 3 };

struct PriorArgs {
  std::string spec;
  std::string file;
  std::string samples;

  void attach(CLI::App& app) {
    auto* a = app.add_option("--prior", spec, "prior spec, e.g. normal:0,1 or t:5");
    auto* b = app.add_option("--prior-file", file, "prior as a JSON object");
    auto* c = app.add_option("--samples", samples, "CSV of value[,weight] rows");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }

  PriorDistribution load() const {
    if (!spec.empty()) return parse_prior_spec(spec);
    if (!file.empty()) return load_prior_file(file);
    if (!samples.empty()) return load_samples_csv(samples);
    throw InvalidInput("prior", "one of --prior, --prior-file or --samples is required");
  }
};

struct MeasureArgs {
  std::string kind;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::string penalty;
  std::string penalty_file;
  std::string loss;
  std::optional<double> cost_p;
  double tol = 1e-9;
  bool restrict_support = false;
  PriorArgs prior;
};

double require(const std::optional<double>& v, const char* field) {
  if (!v) throw InvalidInput(field, "is required for this measure");
  return *v;
}

Penalization load_penalty(const MeasureArgs& a) {
  if (!a.penalty_file.empty()) {
    std::ifstream in(a.penalty_file);
    if (!in) throw InvalidInput("penalty-file", "cannot open '" + a.penalty_file + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_penalty_json(text);
  }
  if (a.penalty.empty()) throw InvalidInput("penalty", "is required for this measure");
  return make_penalty(a.penalty, require(a.delta, "delta"));
}

double default_cost(const LossSpec& l) { return l.growth().power; }

int run_measure(const MeasureArgs& a) {
  const PriorDistribution d = a.prior.load();
  SearchOptions search;
  search.tolerance = a.tol;
  search.restrict_to_support = a.restrict_support;

  if (a.kind == "var") {
    std::cout << format_value(var(d, require(a.alpha, "alpha"))) << '\n';
  } else if (a.kind == "expectile") {
    std::cout << format_value(expectile(d, require(a.alpha, "alpha"))) << '\n';
  } else if (a.kind == "robust-expectile") {
    const double alpha = require(a.alpha, "alpha");
    const double delta = require(a.delta, "delta");
    const PenaltyFamily family = parse_penalty_family(a.penalty.empty() ? "" : a.penalty);
    const ExpectileSolution s = family == PenaltyFamily::linear
                                    ? solve_robust_expectile_linear(d, alpha, delta)
                                    : solve_robust_expectile_ball(d, alpha, delta);
    std::cout << format_value(s.value) << '\n';
    if (!s.converged) return kInfeasible;
  } else if (a.kind == "oce" || a.kind == "quantile") {
    const double alpha = require(a.alpha, "alpha");
    const std::string loss_text =
        a.loss.empty() ? (a.kind == "oce" ? "asym-quadratic" : "pinball") : a.loss;
    const LossSpec l = parse_loss_spec(loss_text, alpha);
    const CostExponent p(a.cost_p ? *a.cost_p : default_cost(l));
    const Penalization phi = load_penalty(a);
    if (a.kind == "oce") {
      const RobustValue r = robust_oce(d, l, p, phi, search);
      std::cout << format_value(r.value) << '\n';
      if (!r.converged) return kInfeasible;
    } else {
      const QuantileSolution q = solve_robust_generalized_quantile(d, l, p, phi, search);
      std::cout << format_value(q.argmin.lower) << ' ' << format_value(q.argmin.upper) << '\n';
      if (!q.converged) return kInfeasible;
    }
  } else {
    throw InvalidInput("measure", "unknown measure '" + a.kind +
                                      "' (var, expectile, robust-expectile, oce, quantile)");
  }
  return kOk;
}

struct SweepArgs {
  std::string alphas = "0.1,0.3,0.7,0.9";
  std::string deltas;
  std::string penalty;
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  PriorArgs prior;
};

int run_sweep_command(const SweepArgs& a) {
  PriorDistribution prior = a.prior.load();
  if (a.draws > 0) {
    const std::vector<double> draws = sample(prior, a.draws, a.seed);
    prior = PriorDistribution::empirical_uniform(draws);
  }
  const PenaltyFamily family = parse_penalty_family(a.penalty);
  const std::string default_deltas = family == PenaltyFamily::linear ? "1:10:0.5" : "0:2:0.1";
  SweepGrid grid{parse_grid(a.alphas, "alpha"),
                 parse_grid(a.deltas.empty() ? default_deltas : a.deltas, "delta"), family,
                 prior};
  const SweepResult result = run_sweep(grid);
  for (const auto& [alpha, delta] : result.skipped) {
    std::cerr << "skipped alpha=" << format_value(alpha) << " delta=" << format_value(delta)
              << ": delta must exceed max{alpha, 1 - alpha}\n";
  }

  if (a.out.empty()) {
    write_sweep_csv(std::cout, result.rows);
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw InvalidInput("out", "cannot write '" + a.out + "'");
    write_sweep_csv(file, result.rows);
  }
  if (!a.svg.empty()) {
    std::ofstream file(a.svg, std::ios::binary);
    if (!file) throw InvalidInput("svg", "cannot write '" + a.svg + "'");
    file << render_sweep_svg(result.rows, family,
                             std::string("robust expectile sweep, ") + prior.describe());
  }

  std::size_t converged = 0;
  for (const SweepRow& r : result.rows) converged += r.converged ? 1 : 0;
  if (converged == 0) {
    std::cerr << "no row converged\n";
    return kInfeasible;
  }
  return kOk;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const auto reports = verify::run_suite(suite, seed);
  bool ok = true;
  for (const auto& r : reports) {
    verify::print_checks(std::cout, r);
    ok = ok && r.passed();
  }
  return ok ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust risk measures under transport-cost uncertainty"};
  app.require_subcommand(1);

  MeasureArgs m;
  auto* measure = app.add_subcommand("measure", "compute a single risk measure");
  measure->add_option("kind", m.kind, "var | expectile | robust-expectile | oce | quantile")
      ->required();
  measure->add_option("--alpha", m.alpha, "level in (0, 1)");
  measure->add_option("--delta", m.delta, "penalization parameter");
  measure->add_option("--penalty", m.penalty, "linear | ball");
  measure->add_option("--penalty-file", m.penalty_file, "penalization as a JSON object");
  measure->add_option("--loss", m.loss, "pinball | asym-quadratic | power:c1,k1,c2,k2");
  measure->add_option("--cost-p", m.cost_p, "transport cost exponent (1 or 2)");
  measure->add_option("--tol", m.tol, "relative search tolerance");
  measure->add_flag("--restrict-support", m.restrict_support,
                    "search m over the empirical support only");
  m.prior.attach(*measure);

  SweepArgs s;
  auto* sweep = app.add_subcommand("sweep", "sweep robust expectiles over (alpha, delta) grids");
  sweep->add_option("--alpha", s.alphas, "alpha grid: a,b,c or start:stop:step");
  sweep->add_option("--delta", s.deltas, "delta grid: a,b,c or start:stop:step");
  sweep->add_option("--penalty", s.penalty, "linear | ball")->required();
  sweep->add_option("--out", s.out, "CSV output path (stdout when omitted)");
  sweep->add_option("--svg", s.svg, "optional SVG chart path");
  sweep->add_option("--seed", s.seed, "seed for --draws");
  sweep->add_option("--draws", s.draws, "replace the prior by this many seeded draws");
  s.prior.attach(*sweep);

  std::string suite;
  std::uint64_t verify_seed = verify::kDefaultSeed;
  auto* verify_cmd = app.add_subcommand("verify", "run property suites");
  verify_cmd->add_option("suite", suite, "axioms | duality | transforms | reductions | trends | all")
      ->required();
  verify_cmd->add_option("--seed", verify_seed, "seed for randomized cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*measure) return run_measure(m);
    if (*sweep) return run_sweep_command(s);
    if (*verify_cmd) return run_verify(suite, verify_seed);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const NoConvergence& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kInfeasible;
  } catch (const MomentUndefined& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const DeltaTooSmall& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const UncertifiedGrowth& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
