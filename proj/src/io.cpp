#include "rrisk/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rrisk/errors.hpp"

namespace rrisk {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void require_count(const std::vector<double>& v, std::size_t lo, std::size_t hi,
                   const std::string& field) {
  if (v.size() < lo || v.size() > hi) {
    throw InvalidInput(field, "expected " + std::to_string(lo) +
                                  (lo == hi ? "" : "-" + std::to_string(hi)) + " parameters, got " +
                                  std::to_string(v.size()));
  }
}

double number_field(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key)) throw InvalidInput(context + "." + key, "missing");
  const json& v = j.at(key);
  if (!v.is_number()) throw InvalidInput(context + "." + key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(context + "." + key, "must be finite");
  return x;
}

json parse_json(std::string_view text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(field, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(field, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

double parse_number(std::string_view text, const std::string& field) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw InvalidInput(field, "not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_number_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_number(part, field));
  return out;
}

PriorDistribution parse_prior_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string family = lower(trim(text.substr(0, colon)));
  const std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  const std::vector<double> v = parse_number_list(rest, "prior");
  if (family == "normal") {
    require_count(v, 2, 2, "prior");
    return PriorDistribution::normal(v[0], v[1]);
  }
  if (family == "exponential" || family == "exp") {
    require_count(v, 1, 1, "prior");
    return PriorDistribution::exponential(v[0]);
  }
  if (family == "t" || family == "studentt" || family == "student_t") {
    require_count(v, 1, 3, "prior");
    if (v.size() == 2) throw InvalidInput("prior", "student-t takes dof or dof,location,scale");
    return v.size() == 1 ? PriorDistribution::student_t(v[0])
                         : PriorDistribution::student_t(v[0], v[1], v[2]);
  }
  if (family == "empirical") {
    if (v.empty()) throw InvalidInput("prior", "empirical prior needs at least one value");
    return PriorDistribution::empirical_uniform(v);
  }
  if (family == "point") {
    require_count(v, 1, 1, "prior");
    return PriorDistribution::point_mass(v[0]);
  }
  throw InvalidInput("prior", "unknown family '" + family + "'");
}

PriorDistribution parse_prior_json(std::string_view text) {
  const json j = parse_json(text, "prior-file");
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw InvalidInput("prior-file.family", "missing or not a string");
  }
  const std::string family = lower(j.at("family").get<std::string>());
  const std::string ctx = "prior-file";
  if (family == "normal") {
    return PriorDistribution::normal(number_field(j, "mean", ctx), number_field(j, "stddev", ctx));
  }
  if (family == "exponential") return PriorDistribution::exponential(number_field(j, "rate", ctx));
  if (family == "student_t" || family == "studentt" || family == "t") {
    const double loc = j.contains("location") ? number_field(j, "location", ctx) : 0.0;
    const double scale = j.contains("scale") ? number_field(j, "scale", ctx) : 1.0;
    return PriorDistribution::student_t(number_field(j, "dof", ctx), loc, scale);
  }
  if (family == "empirical") {
    if (j.contains("points")) {
      const json& pts = j.at("points");
      if (!pts.is_array() || pts.empty()) {
        throw InvalidInput("prior-file.points", "must be a nonempty array");
      }
      std::vector<Atom> atoms;
      for (const json& p : pts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          throw InvalidInput("prior-file.points", "entries must be [value, weight]");
        }
        atoms.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return PriorDistribution::empirical(std::move(atoms));
    }
    if (j.contains("values")) {
      const json& vals = j.at("values");
      if (!vals.is_array() || vals.empty()) {
        throw InvalidInput("prior-file.values", "must be a nonempty array");
      }
      std::vector<double> v;
      for (const json& x : vals) {
        if (!x.is_number()) throw InvalidInput("prior-file.values", "entries must be numbers");
        v.push_back(x.get<double>());
      }
      return PriorDistribution::empirical_uniform(v);
    }
    throw InvalidInput("prior-file.points", "empirical prior needs points or values");
  }
  throw InvalidInput("prior-file.family", "unknown family '" + family + "'");
}

PriorDistribution load_prior_file(const std::string& path) {
  return parse_prior_json(read_file(path, "prior-file"));
}

PriorDistribution parse_samples_csv(std::istream& in) {
  std::vector<Atom> atoms;
  std::string line;
  int row = 0;
  bool weighted = false;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto cells = split(s, ',');
    if (cells.size() > 2) {
      throw InvalidInput("samples", "row " + std::to_string(row) + " has more than two columns");
    }
    double value = 0.0;
    try {
      value = parse_number(cells[0], "samples");
    } catch (const InvalidInput&) {
      if (atoms.empty() && first_data) {
        first_data = false;  // header row
        continue;
      }
      throw InvalidInput("samples", "row " + std::to_string(row) + ": bad value '" +
                                        std::string(cells[0]) + "'");
    }
    const bool has_weight = cells.size() == 2;
    if (atoms.empty()) {
      weighted = has_weight;
    } else if (has_weight != weighted) {
      throw InvalidInput("samples", "row " + std::to_string(row) + ": inconsistent column count");
    }
    const double weight = has_weight ? parse_number(cells[1], "samples") : 1.0;
    atoms.push_back({value, weight});
    first_data = false;
  }
  if (atoms.empty()) throw InvalidInput("samples", "no data rows");
  if (!weighted) {
    std::vector<double> v;
    for (const auto& a : atoms) v.push_back(a.value);
    return PriorDistribution::empirical_uniform(v);
  }
  return PriorDistribution::empirical(std::move(atoms));
}

PriorDistribution load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("samples", "cannot open '" + path + "'");
  return parse_samples_csv(in);
}

Penalization make_penalty(std::string_view family, double delta) {
  const std::string f = lower(trim(family));
  if (f == "linear") return Penalization::linear(delta);
  if (f == "ball") return Penalization::ball(delta);
  throw InvalidInput("penalty", "unknown penalty '" + f + "' (expected linear or ball)");
}

Penalization parse_penalty_json(std::string_view text) {
  const json j = parse_json(text, "penalty");
  if (!j.is_object() || !j.contains("penalty") || !j.at("penalty").is_string()) {
    throw InvalidInput("penalty.penalty", "missing or not a string");
  }
  const std::string f = lower(j.at("penalty").get<std::string>());
  if (f == "piecewise") {
    if (!j.contains("breakpoints") || !j.at("breakpoints").is_array()) {
      throw InvalidInput("penalty.breakpoints", "must be an array");
    }
    std::vector<Breakpoint> bps;
    for (const json& b : j.at("breakpoints")) {
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
        throw InvalidInput("penalty.breakpoints", "entries must be [x, slope]");
      }
      bps.push_back({b[0].get<double>(), b[1].get<double>()});
    }
    return Penalization::piecewise(std::move(bps));
  }
  return make_penalty(f, number_field(j, "delta", "penalty"));
}

LossSpec parse_loss_spec(std::string_view text, double alpha) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string name = lower(trim(text.substr(0, colon)));
  if (name == "pinball") return LossSpec::pinball(alpha);
  if (name == "asym-quadratic" || name == "asym_quadratic" || name == "quadratic") {
    return LossSpec::asym_quadratic(alpha);
  }
  if (name == "power") {
    const std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
    const std::vector<double> v = parse_number_list(rest, "loss");
    require_count(v, 4, 4, "loss");
    return LossSpec::generalized_quantile(alpha, PowerLoss{v[0], v[1]}, PowerLoss{v[2], v[3]});
  }
  throw InvalidInput("loss", "unknown loss '" + name + "'");
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", value);
  std::string s = buf;
  if (s == "-0.000000000000") s.erase(0, 1);
  return s;
}

}  // namespace rrisk
