#pragma once

// Run configuration read from a JSON document.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nvfix/descriptor.hpp"
#include "nvfix/grid_spec.hpp"

namespace nvfix::cli {

using json = nlohmann::ordered_json;
using nvfix::to_string;

inline constexpr const char *kVersion = "0.1.0";

enum class Task { Classify, Nielsen, Scan, Verify };

std::string_view to_string(Task t);
/// Throws ConfigError for unknown names.
Task parse_task(std::string_view name);

struct RunConfig {
  NValuedMapDescriptor descriptor;
  Task task = Task::Nielsen;
  std::string suite = "all";
  GridSpec grid;
  /// Per-pair values N(q, f_i) for non-split maps, keyed by index.
  std::map<int, std::int64_t> per_pair;
  /// Per-coordinate Nielsen numbers for split maps.
  std::vector<std::int64_t> split;
  /// The parsed document, echoed into the report.
  json echo;
};

/// Parses and validates a config document. Errors are ConfigError with the
/// line and column of a syntax error or the path of the offending field.
RunConfig parse_config(const std::string &text);

} // namespace nvfix::cli
