#pragma once

// ChargeReport: the JSON record every subcommand emits. Each check stores
// value, relation and threshold so its pass flag can be recomputed from the
// report alone. Run-dependent data (timestamps, thread counts, timings) is
// confined to the "metadata" block.

#include <string>
#include <vector>

#include <json.hpp>

#include "charges/adm_charges.hpp"
#include "charges/bondi_radiation.hpp"
#include "charges/extrapolation.hpp"
#include "charges/null_charges.hpp"

namespace charges {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
  bool timing = false;  // wall-clock value; serialized under metadata.timings only
};

/// NaN never passes.
bool holds(double value, const std::string& relation, double threshold);
Check check_le(std::string name, double value, double threshold, std::string detail = {});
Check check_ge(std::string name, double value, double threshold, std::string detail = {});
/// value 1 (true) or 0, required >= 1.
Check check_true(std::string name, bool condition, std::string detail = {});
/// Wall-clock bound in seconds.
Check check_runtime(std::string name, double seconds, double limit);

Json to_json(const Check& c);
Json to_json(const LimitFit& fit);
Json to_json(const DecayFit& fit);
Json to_json(const AdmCharges& charges);
Json to_json(const NullCharges& charges);
Json to_json(const ConditionReport& report);
Json to_json(const ConsistencyReport& report);

struct ChargeReport {
  std::string subcommand;
  std::string scenario;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  Json metadata = Json::object();

  void add(Check c) { checks.push_back(std::move(c)); }
  /// False when no check was recorded.
  bool pass() const;
  std::vector<std::string> failing() const;
  Json to_json() const;
  /// Everything except metadata; byte-identical for identical inputs.
  Json deterministic_json() const;
};

}  // namespace charges
