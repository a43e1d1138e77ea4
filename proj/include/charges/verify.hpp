#pragma once

// Property suite: the ten acceptance criteria plus per-module property
// checks, each expressed as named Checks with pinned tolerances.

#include <cstdint>
#include <string>
#include <vector>

#include "charges/report.hpp"

namespace charges {

struct VerifyOptions {
  double tolerance_scale = 1.0;  // multiplies accuracy tolerances; runtime bounds and decay gates are fixed
  std::uint64_t seed = 20240601;
  int n_theta = kDefaultNTheta;
  int n_psi = kDefaultNPsi;
};

struct CriterionResult {
  std::string id;     // "AC1" .. "AC10", or "P-<module>"
  std::string title;
  std::vector<Check> checks;
  Json diagnostics = Json::object();  // reported numbers without a pass/fail verdict
  double seconds = 0.0;
  bool pass() const;
};

/// AC1 .. AC10. AC10 closes with the wall time of the whole call.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

/// Module-level property checks beyond the acceptance criteria.
std::vector<CriterionResult> run_properties(const VerifyOptions& options);

/// Acceptance criteria followed by properties; AC10's runtime bound then
/// covers the full suite.
std::vector<CriterionResult> run_verify_suite(const VerifyOptions& options);

Json to_json(const CriterionResult& result);

}  // namespace charges
