#pragma once

// Radiating spacetimes: derived angular fields, Conditions A and B, Bondi
// energy-momentum and its evolution under the news flux, and the induced
// data of the asymptotically null slice.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "charges/bondi_expansion.hpp"
#include "charges/extrapolation.hpp"
#include "charges/geometry.hpp"
#include "charges/null_charges.hpp"
#include "charges/spacetimes.hpp"
#include "charges/sphere_grid.hpp"

namespace charges {

struct DerivedFields {
  SphereField l, lbar, p, pbar;
};

/// Closed-form l, lbar, p, pbar at retarded time u. Throws DegenerateError
/// (pole regularity) if any node is non-finite.
DerivedFields derived_fields(const BondiExpansion& e, double u, const GridPtr& grid);

/// Same fields from sampled c, d, N, P using grid angular derivatives.
DerivedFields derived_fields_sampled(const BondiExpansion& e, double u, const GridPtr& grid);

SphereField mass_aspect(const BondiExpansion& e, double u, const GridPtr& grid);

/// m_nu = (1 / 4 pi) integral of M n^nu.
std::array<double, 4> bondi_energy_momentum(const SphereField& mass_aspect);

/// F_nu = (1 / 4 pi) integral of ((c_u)^2 + (d_u)^2) n^nu.
std::array<double, 4> news_flux(const BondiExpansion& e, double u, const GridPtr& grid);

struct TrajectorySample {
  double u = 0.0;
  std::array<double, 4> m{};
  std::array<double, 4> flux{};
  double margin = 0.0;       // m0 - |m|
  double dmargin_du = 0.0;   // discrete derivative of margin
  double rate = 0.0;         // -F0 + m.F / |m| (or -F0 when |m| = 0)
};

struct EnergyMomentumTrajectory {
  std::vector<TrajectorySample> samples;  // ascending in u
  std::string to_csv() const;
};

/// Integrates dm_nu/du = -F_nu with Simpson's rule on each step, starting at
/// u_start. u_end < u_start integrates backward; samples are always
/// returned in ascending u.
EnergyMomentumTrajectory evolve_energy_momentum(const std::array<double, 4>& m_start, const BondiExpansion& e,
                                                double u_start, double u_end, double du, const GridPtr& grid);

struct MassLossMargin {
  double max_discrete = 0.0;  // max over u of the discrete d/du (m0 - |m|)
  double max_rate = 0.0;      // max of the instantaneous rate
  double worst_holder = 0.0;  // max of sqrt(sum F_i^2) - F0
};

MassLossMargin mass_loss_margin(const EnergyMomentumTrajectory& traj);

struct ConditionReport {
  bool holds = true;
  double worst = 0.0;
  std::string detail;
};

/// Six metric functions and derivatives to second order compared at psi = 0
/// and psi = 2 pi.
ConditionReport check_condition_a(const BondiExpansion& e, std::span<const double> u_samples, double r,
                                  double tolerance = 1e-10);

/// integral of c over psi extrapolated to theta = 0 and pi.
ConditionReport check_condition_b(const BondiExpansion& e, std::span<const double> u_samples,
                                  double tolerance = 1e-8);

/// Closed-form asymptotic expansions of g(e_i, e_j) and h(e_i, e_j) on the
/// slice of `spec`, remainders beyond 1/r^3 set to zero.
InitialData induced_slice_data(const BondiExpansion& e, const SliceSpec& spec);

/// The induced data of the slice computed by pulling back the metric.
InitialData pulled_back_slice_data(const BondiExpansion& e, const SliceSpec& spec, double r_min);

inline const std::array<std::string, 12> kInducedComponentNames = {"g11", "g12", "g13", "g22", "g23", "g33",
                                                                   "h11", "h12", "h13", "h22", "h23", "h33"};

struct ComponentConsistency {
  std::string name;
  std::vector<double> sup_difference;  // per radius
  DecayFit fit;
  bool consistent = false;
};

struct ConsistencyReport {
  std::vector<ComponentConsistency> components;
  bool consistent = false;
  double min_exponent = 0.0;
  std::vector<std::string> failing;
};

inline constexpr double kConsistencyExponent = 3.3;

ConsistencyReport expansion_consistency(const BondiExpansion& e, const SliceSpec& spec,
                                        std::span<const double> radii, const GridPtr& grid, double r_min);

struct NewsFreeSliceReport {
  EnergyMomentumTrajectory trajectory;
  double max_news_at_u0 = 0.0;
  bool precondition = false;
  double min_gap = 0.0;  // min over u of m0 - |m|
  bool inequality_holds = false;
  NullCharges slice_charges;
  double pmt_null_margin = 0.0;
  RigidityResidual worst_rigidity;
  double e0_minus_p01 = 0.0;  // diagnostic against m0(u0)
};

/// Evolves m backward from u0 (where m(u0) = m_final) to u_lo and evaluates
/// the null charges of the u0 slice.
NewsFreeSliceReport news_free_slice_scenario(const BondiExpansion& e, const std::array<double, 4>& m_final, double u0,
                                   double u_lo, double du, const GridPtr& grid, std::span<const double> radii,
                                   const SliceSpec& spec, double r_min);

}  // namespace charges
