#include "charges/report.hpp"

#include <cmath>

namespace charges {

bool holds(double value, const std::string& relation, double threshold) {
  if (std::isnan(value) || std::isnan(threshold)) return false;
  if (relation == "<=") return value <= threshold;
  if (relation == ">=") return value >= threshold;
  return false;
}

Check check_le(std::string name, double value, double threshold, std::string detail) {
  return {std::move(name), value, "<=", threshold, holds(value, "<=", threshold), std::move(detail)};
}

Check check_ge(std::string name, double value, double threshold, std::string detail) {
  return {std::move(name), value, ">=", threshold, holds(value, ">=", threshold), std::move(detail)};
}

Check check_true(std::string name, bool condition, std::string detail) {
  return check_ge(std::move(name), condition ? 1.0 : 0.0, 1.0, std::move(detail));
}

Check check_runtime(std::string name, double seconds, double limit) {
  Check c = check_le(std::move(name), seconds, limit);
  c.timing = true;
  return c;
}

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  if (!c.timing) j["value"] = c.value;
  j["relation"] = c.relation;
  j["threshold"] = c.threshold;
  j["pass"] = c.pass;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const LimitFit& fit) {
  return Json{{"limit", fit.limit},
              {"coefficients", fit.coefficients},
              {"residual", fit.residual},
              {"error_estimate", fit.error_estimate},
              {"diverging", fit.diverging}};
}

Json to_json(const DecayFit& fit) {
  Json j{{"exact_zero", fit.exact_zero}};
  if (!fit.exact_zero) {
    j["exponent"] = fit.exponent;
    j["residual"] = fit.residual;
  }
  return j;
}

Json to_json(const AdmCharges& a) {
  Json j;
  j["radii"] = a.radii;
  j["energy"] = to_json(a.energy);
  j["energy_samples"] = a.energy_samples;
  for (int k = 0; k < 3; ++k) {
    j["momentum"].push_back(to_json(a.momentum[k]));
    j["momentum_samples"].push_back(a.momentum_samples[k]);
  }
  return j;
}

Json to_json(const NullCharges& c) {
  Json j;
  j["radii"] = c.radii;
  for (int nu = 0; nu < 4; ++nu) {
    Json e = to_json(c.energy[nu]);
    e["samples"] = c.energy_samples[nu];
    j["energy"].push_back(e);
    Json row = Json::array();
    for (int k = 0; k < 3; ++k) {
      Json p = to_json(c.momentum[nu][k]);
      p["samples"] = c.momentum_samples[nu][k];
      row.push_back(p);
    }
    j["momentum"].push_back(row);
    Json comb = to_json(c.combination[nu]);
    comb["samples"] = c.combination_samples[nu];
    j["energy_minus_momentum1"].push_back(comb);
  }
  j["tau_exact"] = c.tau_exact;
  if (!c.tau_exact) j["tau_hat"] = c.tau_hat;
  j["gate_passed"] = c.gate_passed;
  Json decay = Json::object();
  for (const auto& cd : c.decay) {
    Json d = to_json(cd.fit);
    d["sup_norm"] = cd.sup_norm;
    decay[cd.name] = d;
  }
  j["decay"] = decay;
  return j;
}

Json to_json(const ConditionReport& r) {
  return Json{{"holds", r.holds}, {"worst", r.worst}, {"detail", r.detail}};
}

Json to_json(const ConsistencyReport& r) {
  Json j;
  j["consistent"] = r.consistent;
  j["min_exponent"] = r.min_exponent;
  j["failing"] = r.failing;
  Json comps = Json::object();
  for (const auto& c : r.components) {
    Json d = to_json(c.fit);
    d["sup_difference"] = c.sup_difference;
    d["consistent"] = c.consistent;
    comps[c.name] = d;
  }
  j["components"] = comps;
  return j;
}

bool ChargeReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> ChargeReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

Json ChargeReport::deterministic_json() const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["subcommand"] = subcommand;
  j["scenario"] = scenario;
  j["config"] = config;
  j["results"] = results;
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back(charges::to_json(c));
  j["checks"] = cs;
  j["warnings"] = warnings;
  j["pass"] = pass();
  return j;
}

Json ChargeReport::to_json() const {
  Json j = deterministic_json();
  j["metadata"] = metadata;
  for (const auto& c : checks)
    if (c.timing) j["metadata"]["timings"][c.name] = c.value;
  return j;
}

}  // namespace charges
