#pragma once

// Charges of asymptotically null data measured against the hyperboloid
// model (g = h = hyperbolic metric in the frame e_1 = sqrt(1+r^2) d_r,
// e_2 = r^-1 d_theta, e_3 = (r sin theta)^-1 d_psi).

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "charges/extrapolation.hpp"
#include "charges/geometry.hpp"
#include "charges/sphere_grid.hpp"

namespace charges {

/// Gamma[k][i][j] = e^k(nabla_{e_i} e_j) of the hyperbolic metric.
using FrameConnection = std::array<Mat3<double>, 3>;
using ConnectionFn = std::function<FrameConnection(const Vec3<double>&)>;

/// Closed form at y = (r, theta, psi).
FrameConnection background_connection(const Vec3<double>& y);

struct NullDeviation {
  Mat3<Jet1> a;  // g(e_i, e_j) - delta_ij, with chart derivatives
  Mat3<Jet1> b;  // p(e_i, e_j) - delta_ij
  Mat3<double> g;
};

NullDeviation deviation(const PointData& data);

struct ChargeIntegrand {
  double energy = 0.0;         // script E
  Vec3<double> momentum{};     // script P_k
};

/// Requires data in the hyperbolic frame.
ChargeIntegrand charge_integrand(const PointData& data, const ConnectionFn& connection = background_connection);

struct ComponentDecay {
  std::string name;  // a11 .. a33, b11 .. b33
  std::vector<double> sup_norm;  // per radius
  DecayFit fit;
};

/// Sup-norm decay of every deviation component over the sphere.
std::vector<ComponentDecay> estimate_decay_orders(const InitialData& data, std::span<const double> radii,
                                                  const GridPtr& grid);
DecayFit estimate_decay_order(const InitialData& data, const std::string& component, std::span<const double> radii,
                              const GridPtr& grid);

inline constexpr double kTauGate = 1.55;

struct NullCharges {
  std::vector<double> radii;
  std::array<std::vector<double>, 4> energy_samples;
  std::array<std::array<std::vector<double>, 3>, 4> momentum_samples;
  std::array<LimitFit, 4> energy;
  std::array<std::array<LimitFit, 3>, 4> momentum;
  std::array<std::vector<double>, 4> combination_samples;  // E_nu - P_nu,1
  std::array<LimitFit, 4> combination;
  double tau_hat = 0.0;       // min fitted exponent over non-zero components
  bool tau_exact = false;     // every deviation identically zero
  bool gate_passed = false;   // tau_hat >= kTauGate
  std::vector<ComponentDecay> decay;
};

struct NullChargeOptions {
  ConnectionFn connection = background_connection;
  bool parallel = true;
};

NullCharges null_energy_momentum(const InitialData& data, std::span<const double> radii, const GridPtr& grid,
                                 const NullChargeOptions& options = {});

/// mu - max(|varpi|, |varpi + sigma|) at each sample point.
std::vector<double> check_dec_null(const InitialData& data, std::span<const Vec3<double>> points);

/// (E_0 - P_0,1) - sqrt(sum_i (E_i - P_i,1)^2).
double check_pmt_null(const std::array<double, 4>& combination);
double check_pmt_null(const NullCharges& charges);

}  // namespace charges
