// Randomized invariant suite behind the `verify` command.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thetaper::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed value
  double threshold = 0.0;  // pass iff metric <= threshold (or >= for ratios, see name)
  std::string detail;
};

std::vector<CheckResult> run_invariants(std::uint64_t seed, int trials);

}  // namespace thetaper::cli
