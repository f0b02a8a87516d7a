#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace rectcolor {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  // Skip the H_3^2 parts of criteria 2 and 3 (minutes, ~2 GB).
  bool skip_large = false;
  // When nonempty, criterion 10 writes its artifacts here.
  std::string artifact_dir;
};

// Runs the ten acceptance criteria in order, printing one line per criterion
// to `log` as it finishes. A criterion fails if a check fails, it throws, or
// it exceeds its time budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);

}  // namespace rectcolor
