#pragma once

// Subcommands of the command-line tool. Each returns a ChargeReport and,
// where the subcommand has one, a CSV table.

#include <string>
#include <vector>

#include "charges/config.hpp"
#include "charges/report.hpp"

namespace charges {

struct RunOptions {
  bool strict = false;  // warnings become failing checks
};

struct RunResult {
  ChargeReport report;
  std::string csv;  // empty when the subcommand has no table
};

const std::vector<std::string>& subcommand_names();

/// Throws UsageError for an unknown subcommand or a preset it cannot handle.
RunResult run_subcommand(const std::string& subcommand, const ScenarioConfig& config, const RunOptions& options = {});

Json config_to_json(const ScenarioConfig& config);

}  // namespace charges
