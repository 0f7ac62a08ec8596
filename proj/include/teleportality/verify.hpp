#pragma once

// End-to-end oracle suite behind `teleportality verify`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace teleportality {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240229;
  std::size_t mc_samples = 100000;
  /// Harness self-test: every tolerance becomes negative so each criterion
  /// must report a failure.
  bool corrupt_tolerance = false;
};

CriterionResult verify_table1(const VerifyOptions& opt);
CriterionResult verify_table2(const VerifyOptions& opt);
CriterionResult verify_oracles_3q(const VerifyOptions& opt);
CriterionResult verify_oracles_4q(const VerifyOptions& opt);
CriterionResult verify_monte_carlo(const VerifyOptions& opt);
CriterionResult verify_ordering(const VerifyOptions& opt);
CriterionResult verify_threshold(const VerifyOptions& opt);
CriterionResult verify_extremal(const VerifyOptions& opt);

std::vector<CriterionResult> run_verify(const VerifyOptions& opt);

/// One line per criterion plus a summary line. Contains no timings, so the
/// output is a pure function of the options.
void write_report(std::ostream& os, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace teleportality
