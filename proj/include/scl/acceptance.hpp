#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scl/rng.hpp"

namespace scl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured values behind the verdict.
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  /// Monte Carlo samples per sampled n (criteria 4, 6, 7, 8).
  std::uint64_t samples = 100'000;
  Seed seed{20240611, 0};
  unsigned threads = 0;
  /// Criteria to run; empty runs 1 through 9.
  std::vector<int> only;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Runs the acceptance criteria in order, reporting each as it finishes.
/// Exceptions inside a criterion are recorded as a failure of that criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, const CriterionCallback& on_result = {});

/// "[PASS] 1 hom counts: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace scl
