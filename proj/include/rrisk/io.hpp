#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "rrisk/distributions.hpp"
#include "rrisk/losses.hpp"
#include "rrisk/penalizations.hpp"

namespace rrisk {

/// Finite real number; the whole string must be consumed.
double parse_number(std::string_view text, const std::string& field);
std::vector<double> parse_number_list(std::string_view text, const std::string& field);

/// `normal:mu,sigma`, `exponential:rate`, `t:dof[,loc,scale]` (alias
/// `studentt`), `empirical:v1,v2,...` (uniform weights), `point:c`.
PriorDistribution parse_prior_spec(std::string_view text);

/// {"family": "normal", "mean": .., "stddev": ..} and friends; empirical laws
/// take "points": [[value, weight], ...] or "values": [...].
PriorDistribution parse_prior_json(std::string_view text);
PriorDistribution load_prior_file(const std::string& path);

/// One atom per row, `value[,weight]`; a non-numeric first row is a header.
/// Without a weight column the weights are uniform.
PriorDistribution parse_samples_csv(std::istream& in);
PriorDistribution load_samples_csv(const std::string& path);

/// {"penalty": "linear"|"ball", "delta": d} or
/// {"penalty": "piecewise", "breakpoints": [[x, slope], ...]}.
Penalization parse_penalty_json(std::string_view text);
Penalization make_penalty(std::string_view family, double delta);

/// `pinball`, `asym-quadratic`, or `power:c1,k1,c2,k2` for
/// alpha c1 (x^+)^k1 + (1 - alpha) c2 (x^-)^k2.
LossSpec parse_loss_spec(std::string_view text, double alpha);

/// Fixed-point rendering with 12 digits after the decimal point.
std::string format_value(double value);

}  // namespace rrisk
