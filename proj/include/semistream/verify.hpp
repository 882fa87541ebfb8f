#pragma once
// The acceptance suite: every criterion as a pass/fail check, shared by the
// acceptance test binary and the CLI verify command.

#include <cstdint>
#include <string>
#include <vector>

#include "semistream/core.hpp"

namespace semistream {

struct VerifyConfig {
  int trials_per_class = 10000;  // guarantee sweep volume (criteria 2, 5, 6)
  VertexId sweep_max_n = 40;
  int oracle_cert_trials = 1000;          // criterion 7
  std::vector<VertexId> scaling_sizes = {100, 1000, 10000};  // criterion 8
  std::uint64_t seed = 20250810;
  int threads = 0;  // 0 = hardware concurrency
};

VerifyConfig fast_verify_config();  // completes well under a minute
VerifyConfig full_verify_config();

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs all criteria and returns one result per criterion, in order.
std::vector<CriterionResult> run_acceptance(const VerifyConfig& config);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace semistream
