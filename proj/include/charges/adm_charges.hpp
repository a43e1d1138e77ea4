#pragma once

// Energy-momentum at spatial infinity for data on a Cartesian chart with the
// Euclidean frame, and the accompanying decay and energy-condition checks.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "charges/extrapolation.hpp"
#include "charges/geometry.hpp"
#include "charges/sphere_grid.hpp"

namespace charges {

struct AdmCharges {
  std::vector<double> radii;
  std::vector<double> energy_samples;
  std::array<std::vector<double>, 3> momentum_samples;
  LimitFit energy;
  std::array<LimitFit, 3> momentum;

  double E() const { return energy.limit; }
  Vec3<double> P() const { return {momentum[0].limit, momentum[1].limit, momentum[2].limit}; }
};

/// Flux integrals over coordinate spheres with outward normal, extrapolated
/// in 1/r. Needs >= 3 radii.
AdmCharges adm_energy_momentum(const InitialData& data, std::span<const double> radii, const GridPtr& grid);

struct AfDecayReport {
  // g - delta, dg, ddg, h, dh
  static constexpr std::array<const char*, 5> kNames = {"g-delta", "dg", "ddg", "h", "dh"};
  static constexpr std::array<double, 5> kRequired = {1.0, 2.0, 3.0, 2.0, 3.0};
  std::array<std::vector<double>, 5> sup_norm;
  std::array<DecayFit, 5> fit;
  std::array<bool, 5> ok{};
  bool all_ok = false;
};

inline constexpr double kDecaySlack = 0.3;

/// Needs >= 4 radii.
AfDecayReport check_af_decay(const InitialData& data, std::span<const double> radii, const GridPtr& grid);

/// mu - |div h - d tr h| at each point.
std::vector<double> check_dec_flat(const InitialData& data, std::span<const Vec3<double>> points);

/// E - |P|.
double check_pmt_flat(double energy, const Vec3<double>& momentum);
double check_pmt_flat(const AdmCharges& charges);

/// Points r n(theta_i, psi_j) (Cartesian) or (r, theta_i, psi_j) (polar) for
/// every radius and grid node.
std::vector<Vec3<double>> sphere_points(std::span<const double> radii, const GridPtr& grid, Chart3 chart);

/// Data seen in the rotated chart y' = R y.
InitialData rotate_initial_data(const InitialData& data, const Mat3<double>& rotation);

/// Conformally flat (1 + m/2r)^4 delta with the Bowen-York extrinsic
/// curvature of linear momentum P. Not a constraint solution; E = m and the
/// momentum flux equals P at every radius.
InitialData bowen_york_test_data(double m, const Vec3<double>& momentum);

}  // namespace charges
