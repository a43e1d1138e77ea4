#pragma once

// Radial extrapolation of per-radius samples and log-log decay fits.

#include <span>
#include <string>
#include <vector>

namespace charges {

struct LimitFit {
  double limit = 0.0;            // A in A + B/r + C/r^2
  std::vector<double> coefficients;
  double residual = 0.0;         // max |fit - sample|
  double error_estimate = 0.0;   // |A - A'| with A' refitted without the innermost rung
  bool diverging = false;        // successive differences fail to contract
};

/// Least-squares fit of A + B/r + C/r^2; needs >= 3 strictly increasing radii.
LimitFit extrapolate_limit(std::span<const double> radii, std::span<const double> values);

inline constexpr double kExactZeroFloor = 1e-13;

struct DecayFit {
  double exponent = 0.0;   // tau in |f| ~ r^-tau
  double residual = 0.0;   // max deviation of log|f| from the fitted line
  bool exact_zero = false;  // every sample below the floor
  std::string describe() const;
};

/// Log-log slope of |values| against radii; samples below `floor` are dropped.
DecayFit fit_decay(std::span<const double> radii, std::span<const double> values,
                   double floor = kExactZeroFloor);

/// Parses "a,b,c" into a strictly increasing positive ladder; throws ConfigError.
std::vector<double> parse_ladder(const std::string& text);
void validate_ladder(std::span<const double> radii, std::size_t min_rungs);

}  // namespace charges
