#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nvfix_cli/config.hpp"

namespace nvfix::cli {

/// Computes the report for a config. Deterministic for a fixed config.
json run(const RunConfig &config, bool timing = false);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool pass() const;
};

/// Number of acceptance criteria (1-based ids).
inline constexpr int kCriterionCount = 7;

/// Runs one acceptance criterion. `seed` drives every random choice.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

/// Criterion ids of a suite: group, torus, sphere, rp2 or all. Throws
/// UnknownSuite.
std::vector<int> suite_criteria(std::string_view suite);

/// Runs a suite; the report lists every check. Elapsed times are included
/// only when `timing` is set, so reports are otherwise reproducible.
json verify(std::string_view suite, std::uint64_t seed = 0, bool timing = false,
            const std::function<void(const CriterionResult &)> &progress = {});

/// Human-readable rendering of a report.
std::string render_text(const json &report);

} // namespace nvfix::cli
