#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qreach/document.hpp"

namespace qreach {

/// Outcome of one CLI command: exit code 0 for a definite answer, 2 for an
/// inconclusive reachability verdict, 1 for errors.
struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
  std::string summary;
};

/// Runs `command` with its positional arguments against `doc`:
///   analyze-group | find-j | classify-state <name> | kinematic <a> <b> |
///   reachable <a> <b> | transitive <name>
/// Errors (unknown command or state, missing system) are reported through
/// the result with exit code 1 rather than thrown.
CommandResult run_command(const std::string& command, const std::vector<std::string>& args,
                          const AnalysisDocument& doc);

}  // namespace qreach
