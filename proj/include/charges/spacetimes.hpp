#pragma once

// Catalog of 4-metrics and slice embeddings.

#include <string>
#include <vector>

#include "charges/bondi_expansion.hpp"
#include "charges/geometry.hpp"

namespace charges {

struct KerrParameters {
  double m = 1.0;
  double a = 0.5;
};

/// Cartesian, static-polar or retarded (u = t - r) chart.
MetricPtr minkowski(Chart chart);

/// Static-polar or retarded chart; evaluation at r <= 2m throws DegenerateError.
MetricPtr schwarzschild(double m, Chart chart);

/// Boyer-Lindquist form; evaluation where Delta <= 0 throws DegenerateError.
MetricPtr kerr(const KerrParameters& params);

/// The radiating metric assembled from the truncated series.
/// Evaluation below r_min throws DegenerateError.
MetricPtr bondi_metric(const BondiExpansion& expansion, double r_min);

/// 5 max(1, sup|c|, sup|d|) over u in [u_lo, u_hi], sampled.
double default_r_min(const BondiExpansion& expansion, double u_lo, double u_hi);

/// t = t0 slice. A Cartesian source (x, y, z) is mapped to polar angles with
/// psi in [0, 2 pi); a polar source maps identically.
EmbeddingPtr constant_time_slice(Chart3 source, Chart target, double t0 = 0.0);

/// t = sqrt(1 + r^2) (static-polar target) or u = u0 + sqrt(1 + r^2) - r
/// (retarded target).
EmbeddingPtr hyperboloid_embedding(Chart target, double u0 = 0.0);

struct SliceSpec {
  double u0 = 0.0;
  TrigPoly a3;             // function of (theta, psi)
  TrigPoly a4;             // sensitivity hook: adds a4(theta, psi) / r^a4_power
  int a4_power = 5;
};

/// u = u0 + sqrt(1+r^2) - r + (c^2 + d^2)|_{u0} / (12 r^3) + a3 / r^4 + a4.
EmbeddingPtr bondi_slice_embedding(const SliceSpec& spec, const BondiExpansion& expansion);

/// Scenario expansions.
BondiExpansion schwarzschild_expansion(double m);
/// c = A (u - u_n) sin^2 theta, d = 0, M = m.
BondiExpansion quadrupole_expansion(double amplitude, double m, double u_n = 0.0);
/// psi-dependent c and d with every subleading coefficient switched on.
BondiExpansion biaxial_expansion(double amplitude, double m, double u_n = 1.0);

std::vector<std::string> preset_names();

}  // namespace charges
