#pragma once

// Shared plumbing of the verification suite: seeded sampling, timing, and
// the dual-number versus finite-difference comparison.

#include <chrono>
#include <functional>
#include <random>
#include <vector>

#include "charges/bondi_radiation.hpp"
#include "charges/geometry.hpp"
#include "charges/verify.hpp"

namespace charges::verify_detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Values with first (and optionally second) derivatives at one point.
/// d1[c][a] = d value_c / dx^a, d2[c][a][b]; a component without second
/// derivatives leaves d2[c] empty.
struct JetSample {
  std::vector<double> v;
  std::vector<std::vector<double>> d1;
  std::vector<std::vector<std::vector<double>>> d2;
};

using JetEvaluator = std::function<JetSample(const std::vector<double>&)>;
using PointDraw = std::function<std::vector<double>(Rng&)>;

/// Max over points, components and directions of |dual - fd| / max(|dual|, 1).
double dual_vs_fd(const JetEvaluator& f, const PointDraw& draw, Rng& rng, int points);

JetEvaluator metric_jets(MetricPtr metric);
JetEvaluator embedding_jets(EmbeddingPtr embedding);
JetEvaluator initial_data_jets(InitialData data);

PointDraw polar4_draw(double r_lo, double r_hi, double t_lo, double t_hi);
PointDraw cartesian4_draw(double extent);
PointDraw polar3_draw(double r_lo, double r_hi);
PointDraw cartesian3_draw(double r_lo, double r_hi);

/// Random polar points with r in [r_lo, r_hi].
std::vector<Vec3<double>> random_polar_points(Rng& rng, int n, double r_lo, double r_hi);
/// Random Cartesian points with |y| in [r_lo, r_hi].
std::vector<Vec3<double>> random_cartesian_points(Rng& rng, int n, double r_lo, double r_hi);

/// c = amplitude (u - u0)^2 sin^2 theta with M = m (1 + tilt cos theta); news and c vanish at u0.
BondiExpansion news_off_expansion(double amplitude, double m, double tilt, double u0);

/// AC1 .. AC10 without the closing suite-runtime check.
std::vector<CriterionResult> acceptance_without_total(const VerifyOptions& options);

}  // namespace charges::verify_detail
