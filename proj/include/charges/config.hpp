#pragma once

// Scenario configuration: a small sectioned key-value format.
//
//   preset = bondi-quadrupole          # top-level keys before any section
//   [parameters]  m, a, amplitude, news_zero
//   [grid]        ntheta, npsi
//   [ladder]      radii = 10, 20, 40, 80
//   [evolution]   u0, u1, du, m_start = m0, m1, m2, m3
//   [slice]       u0, r_min, consistency_radii
//   [tolerances]  scale
//   [run]         seed
//   [field.X]     X in c d C H M N P a3; repeatable keys
//                   term = <coef> [u^k] [sin^k] [cos^k] [cos(<m>psi) | sin(<m>psi)]
//                   mode = <l> <m> <cos|sin> <u^0 coef> [<u^1 coef> ...]
//
// Unknown sections and keys are errors carrying the line number.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charges/bondi_expansion.hpp"
#include "charges/bondi_radiation.hpp"
#include "charges/spacetimes.hpp"

namespace charges {

struct ScenarioConfig {
  std::string preset = "schwarzschild";
  double m = 1.0;
  double a = 0.5;
  double amplitude = 0.1;
  std::optional<double> news_zero;  // u at which the preset's news potential vanishes

  int n_theta = kDefaultNTheta;
  int n_psi = kDefaultNPsi;
  std::vector<double> radii{10.0, 20.0, 40.0, 80.0};

  double u0 = 0.0;
  double u1 = 10.0;
  double du = 0.01;
  std::optional<std::array<double, 4>> m_start;

  double slice_u0 = 0.0;
  std::optional<double> r_min;
  std::vector<double> consistency_radii{50.0, 100.0, 200.0, 400.0, 800.0};

  double tolerance_scale = 1.0;
  std::uint64_t seed = 20240601;

  // Overrides of the preset's coefficient functions, keyed by field name.
  std::map<std::string, TrigPoly> fields;

  std::vector<std::string> defaulted;  // "section.key = value" for every default applied
  std::vector<std::string> warnings;
  std::optional<ConditionReport> condition_b;  // evaluated when c is given explicitly

  bool is_bondi() const;
  bool is_flat_slice() const;  // presets measured at spatial infinity
};

/// Throws ConfigError naming the line and key on malformed input.
ScenarioConfig parse_config(const std::string& text);

/// Config of a named preset with every default applied.
ScenarioConfig default_config(const std::string& preset);

/// Re-checks invariants after command-line overrides; throws ConfigError.
void validate_config(const ScenarioConfig& config);

/// The preset's expansion with field overrides applied; UsageError for
/// non-Bondi presets.
BondiExpansion scenario_expansion(const ScenarioConfig& config);

SliceSpec scenario_slice(const ScenarioConfig& config);

/// r_min from the config, else the spacetimes default on the slice u = slice_u0.
double scenario_r_min(const ScenarioConfig& config, const BondiExpansion& e);

/// Parses one `term = ...` value; throws ConfigError.
TrigPoly parse_term(const std::string& text);
/// Parses one `mode = ...` value; throws ConfigError.
TrigPoly parse_mode(const std::string& text);

}  // namespace charges
