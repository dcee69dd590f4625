#include "rrisk/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "rrisk/errors.hpp"
#include "rrisk/io.hpp"
#include "rrisk/risk_measures.hpp"

namespace rrisk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_increasing(const std::vector<double>& v, const std::string& field) {
  if (v.empty()) throw InvalidInput(field, "grid must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw InvalidInput(field, "grid must be strictly increasing");
  }
}

std::string svg_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

PenaltyFamily parse_penalty_family(std::string_view text) {
  if (text == "linear") return PenaltyFamily::linear;
  if (text == "ball") return PenaltyFamily::ball;
  throw InvalidInput("penalty", "expected linear or ball, got '" + std::string(text) + "'");
}

const char* to_string(PenaltyFamily family) {
  return family == PenaltyFamily::linear ? "linear" : "ball";
}

std::vector<double> parse_grid(std::string_view text, const std::string& field) {
  if (text.find(':') == std::string_view::npos) return parse_number_list(text, field);
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(':', start);
    parts.push_back(parse_number(text.substr(start, pos - start), field));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3) throw InvalidInput(field, "range grid must be start:stop:step");
  const double first = parts[0];
  const double stop = parts[1];
  const double step = parts[2];
  if (!(step > 0.0)) throw InvalidInput(field, "range step must be positive");
  if (stop < first) throw InvalidInput(field, "range stop lies below its start");
  std::vector<double> out;
  const auto count = static_cast<long long>(std::floor((stop - first) / step + 1e-9));
  for (long long k = 0; k <= count; ++k) out.push_back(first + static_cast<double>(k) * step);
  return out;
}

SweepResult run_sweep(const SweepGrid& grid) {
  require_increasing(grid.alphas, "alpha");
  require_increasing(grid.deltas, "delta");
  for (double a : grid.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidInput("alpha", "grid values must lie in (0, 1)");
  }
  for (double d : grid.deltas) {
    if (!(d >= 0.0)) throw InvalidInput("delta", "grid values must be nonnegative");
  }

  SweepResult result;
  const double mu = mean(grid.prior);
  for (double alpha : grid.alphas) {
    double classical = kNaN;
    double v = kNaN;
    try {
      classical = expectile(grid.prior, alpha);
      v = var(grid.prior, alpha);
    } catch (const Error&) {
    }
    for (double delta : grid.deltas) {
      if (grid.penalty == PenaltyFamily::linear && !(delta > std::max(alpha, 1.0 - alpha))) {
        result.skipped.emplace_back(alpha, delta);
        continue;
      }
      SweepRow row{alpha, delta, kNaN, classical, v, mu, 0, false};
      try {
        const ExpectileSolution s = grid.penalty == PenaltyFamily::linear
                                        ? solve_robust_expectile_linear(grid.prior, alpha, delta)
                                        : solve_robust_expectile_ball(grid.prior, alpha, delta);
        row.robust_value = s.value;
        row.solver_iterations = s.iterations;
        row.converged = s.converged && std::isfinite(s.value) && std::isfinite(classical);
      } catch (const Error&) {
        row.converged = false;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,delta,robust,expectile,var,mean,iters,converged\n";
  for (const SweepRow& r : rows) {
    out << format_value(r.alpha) << ',' << format_value(r.delta) << ','
        << format_value(r.robust_value) << ',' << format_value(r.classical_expectile) << ','
        << format_value(r.var_value) << ',' << format_value(r.mean) << ','
        << r.solver_iterations << ',' << (r.converged ? "true" : "false") << '\n';
  }
}

std::string render_sweep_svg(const std::vector<SweepRow>& rows, PenaltyFamily penalty,
                             const std::string& title) {
  constexpr double width = 800.0;
  constexpr double height = 600.0;
  constexpr double left = 80.0;
  constexpr double right = 160.0;
  constexpr double top = 50.0;
  constexpr double bottom = 70.0;
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::map<double, std::vector<const SweepRow*>> series;
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const SweepRow& r : rows) {
    if (!std::isfinite(r.robust_value)) continue;
    series[r.alpha].push_back(&r);
    x_lo = std::min(x_lo, r.delta);
    x_hi = std::max(x_hi, r.delta);
    y_lo = std::min(y_lo, r.robust_value);
    y_hi = std::max(y_hi, r.robust_value);
  }
  if (series.empty()) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
    const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
    svg << "<line x1=\"" << svg_number(px(xv)) << "\" y1=\"" << top + plot_h << "\" x2=\""
        << svg_number(px(xv)) << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << svg_number(px(xv)) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\">" << svg_number(xv) << "</text>\n";
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << svg_number(py(yv)) << "\" x2=\"" << left
        << "\" y2=\"" << svg_number(py(yv)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << svg_number(py(yv) + 4)
        << "\" text-anchor=\"end\">" << svg_number(yv) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 20
      << "\" text-anchor=\"middle\">delta (" << to_string(penalty) << " penalization)</text>\n";
  svg << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << top + plot_h / 2 << ")\">robust expectile</text>\n";

  std::size_t k = 0;
  for (const auto& [alpha, points] : series) {
    const char* colour = palette[k % std::size(palette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) svg << ' ';
      svg << svg_number(px(points[i]->delta)) << ',' << svg_number(py(points[i]->robust_value));
    }
    svg << "\"/>\n";
    const double ly = top + 20.0 + 20.0 * static_cast<double>(k);
    svg << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w + 45 << "\" y2=\"" << ly << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + plot_w + 52 << "\" y=\"" << ly + 4 << "\">alpha = "
        << svg_number(alpha) << "</text>\n";
    ++k;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rrisk
