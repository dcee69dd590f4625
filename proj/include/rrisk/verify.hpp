#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rrisk::verify {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // case count on success, first counterexample on failure
};

struct CriterionReport {
  int id;
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means unlimited

  bool within_time() const { return time_limit <= 0.0 || seconds < time_limit; }
  bool passed() const;
};

constexpr std::uint64_t kDefaultSeed = 20240601;

CriterionReport var_degeneracy(std::uint64_t seed = kDefaultSeed);
CriterionReport dual_representation(std::uint64_t seed = kDefaultSeed);
CriterionReport reductions(std::uint64_t seed = kDefaultSeed);
CriterionReport adjusted_level(std::uint64_t seed = kDefaultSeed);
CriterionReport coherence(std::uint64_t seed = kDefaultSeed);
CriterionReport oce_axioms(std::uint64_t seed = kDefaultSeed);
CriterionReport transforms(std::uint64_t seed = kDefaultSeed);
CriterionReport weak_duality(std::uint64_t seed = kDefaultSeed);
CriterionReport trends();

/// axioms, duality, transforms, reductions, trends, all.
const std::vector<std::string>& suite_names();

/// Throws InvalidInput for an unknown suite name.
std::vector<CriterionReport> run_suite(std::string_view suite,
                                       std::uint64_t seed = kDefaultSeed);

/// One line per check: "<name>: PASS" or "<name>: FAIL <counterexample>".
void print_checks(std::ostream& out, const CriterionReport& report);

}  // namespace rrisk::verify
