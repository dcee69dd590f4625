// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rrisk/verify.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

rrisk::verify::CriterionReport sweep_determinism() {
  rrisk::verify::CriterionReport report{10, "sweep determinism", {}, 0.0, 0.0};
  const auto start = std::chrono::steady_clock::now();
  const std::string dir = RRISK_ACCEPTANCE_TMP;
  const std::string base = std::string(RRISK_CLI_PATH) +
                           " sweep --prior normal:0,1 --draws 2000 --seed 7 --penalty linear"
                           " --alpha 0.1,0.3,0.7,0.9 --delta 1:10:0.5 --out ";
  const std::string first = dir + "/determinism_a.csv";
  const std::string second = dir + "/determinism_b.csv";
  const int rc1 = std::system((base + first).c_str());
  const int rc2 = std::system((base + second).c_str());
  const std::string a = slurp(first);
  const std::string b = slurp(second);
  const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  report.checks.push_back({"repeated seeded sweeps are byte-identical", ok,
                           ok ? std::to_string(a.size()) + " bytes"
                              : "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) +
                                    ", outputs differ or are empty"});
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

int main() {
  using namespace rrisk::verify;
  const CriterionReport reports[] = {
      var_degeneracy(), dual_representation(), reductions(), adjusted_level(), coherence(),
      oce_axioms(),     transforms(),          weak_duality(), trends(),       sweep_determinism()};
  bool all = true;
  for (const CriterionReport& r : reports) {
    const bool ok = r.passed();
    all = all && ok;
    std::printf("criterion %2d %-45s %s (%.2f s%s)\n", r.id, r.name.c_str(), ok ? "PASS" : "FAIL",
                r.seconds,
                r.time_limit > 0.0 ? (", limit " + std::to_string(static_cast<int>(r.time_limit)) +
                                      " s")
                                         .c_str()
                                   : "");
    if (!ok) print_checks(std::cout, r);
  }
  return all ? 0 : 1;
}
