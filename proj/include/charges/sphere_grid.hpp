#pragma once

// Gauss-Legendre (in cos theta) x uniform (in psi) product grid on the unit
// sphere. Poles are never sampled.

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "charges/parallel.hpp"

namespace charges {

class SphereGrid {
 public:
  /// Requires n_theta >= 2, n_psi >= 4 and even; throws ConfigError otherwise.
  SphereGrid(int n_theta, int n_psi);

  int n_theta() const { return n_theta_; }
  int n_psi() const { return n_psi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_psi_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_psi_ + j; }

  double theta(int i) const { return theta_[i]; }
  double psi(int j) const { return psi_[j]; }
  double theta_of(std::size_t k) const { return theta_[k / n_psi_]; }
  double psi_of(std::size_t k) const { return psi_[k % n_psi_]; }
  /// Quadrature weight of node (i, j); the weights sum to 4 pi.
  double weight(int i, int /*j*/) const { return gauss_weight_[i] * psi_step_; }
  double weight_of(std::size_t k) const { return weight(static_cast<int>(k / n_psi_), 0); }

  std::span<const double> thetas() const { return theta_; }
  std::span<const double> psis() const { return psi_; }

 private:
  int n_theta_;
  int n_psi_;
  double psi_step_;
  std::vector<double> theta_;
  std::vector<double> gauss_weight_;
  std::vector<double> psi_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

GridPtr build_grid(int n_theta, int n_psi);

/// Default resolution used by charge computations.
inline constexpr int kDefaultNTheta = 48;
inline constexpr int kDefaultNPsi = 96;

class SphereField {
 public:
  SphereField(GridPtr grid, std::vector<double> values);
  explicit SphereField(GridPtr grid, double constant = 0.0);

  const GridPtr& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(int i, int j) const { return values_[grid_->index(i, j)]; }
  double& operator()(int i, int j) { return values_[grid_->index(i, j)]; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

  SphereField& operator+=(const SphereField& o);
  SphereField& operator-=(const SphereField& o);
  SphereField& operator*=(const SphereField& o);
  SphereField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

SphereField operator+(SphereField a, const SphereField& b);
SphereField operator-(SphereField a, const SphereField& b);
SphereField operator*(SphereField a, const SphereField& b);
SphereField operator*(double s, SphereField a);

/// Samples f(theta, psi) at every node. Nodes are evaluated in parallel.
template <class F>
SphereField sample(const GridPtr& grid, F&& f) {
  std::vector<double> values(grid->size());
  parallel_for(values.size(), [&](std::size_t k) { values[k] = f(grid->theta_of(k), grid->psi_of(k)); });
  return SphereField(grid, std::move(values));
}

/// Serial reference for `sample`.
template <class F>
SphereField sample_serial(const GridPtr& grid, F&& f) {
  std::vector<double> values(grid->size());
  serial_for(values.size(), [&](std::size_t k) { values[k] = f(grid->theta_of(k), grid->psi_of(k)); });
  return SphereField(grid, std::move(values));
}

/// Sum of w_ij f_ij. Throws NonFiniteError on NaN/inf samples.
double integrate(const SphereField& f);

/// n^0 = 1, n^1 = sin(theta)cos(psi), n^2 = sin(theta)sin(psi), n^3 = cos(theta).
std::array<SphereField, 4> direction_functions(const GridPtr& grid);

/// (1 / 4 pi) integral of f n^nu; nu outside 0..3 is a UsageError.
double project_multipole(const SphereField& f, int nu);

/// All four moments at once.
std::array<double, 4> multipoles(const SphereField& f);

enum class Axis { Theta, Psi };

/// Spectral in psi; 8th-order local-polynomial stencils in theta, with ghost
/// nodes obtained by reflecting through the poles (f(-theta, psi) = f(theta, psi + pi)).
SphereField angular_derivative(const SphereField& f, Axis axis);

/// Weights of the first derivative at x0 of the interpolating polynomial
/// through `nodes` (Fornberg's recursion).
std::vector<double> first_derivative_weights(std::span<const double> nodes, double x0);

}  // namespace charges
