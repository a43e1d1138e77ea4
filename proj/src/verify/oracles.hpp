#pragma once

// Reference computations for the verification suite. They share no code
// with the library routines they check: plain double arithmetic, composite
// Simpson quadrature and Richardson-extrapolated central differences.

#include <array>
#include <functional>

namespace charges::oracle {

/// f'(x) from central differences at steps h and h/2, Richardson-combined.
double derivative(const std::function<double(double)>& f, double x, double h);

/// integral over S^2 of f(theta, psi) dS: composite Simpson in theta,
/// trapezoid in psi.
double sphere_integral(const std::function<double(double, double)>& f, int n_theta = 4000, int n_psi = 128);

/// (1 / 4 pi) integral of f n^nu for nu = 0..3.
std::array<double, 4> sphere_moments(const std::function<double(double, double)>& f);

/// (1 / 4 pi) integral of n^nu n^mu: 1 for nu = mu = 0, 1/3 on the spatial
/// diagonal, 0 otherwise.
double direction_product_mean(int nu, int mu);

/// Gamma[k][i][j] = <nabla_{e_i} e_j, e_k> of the hyperbolic metric
/// dr^2/(1+r^2) + r^2 dOmega^2 in its orthonormal polar frame, from the
/// Koszul formula with frame commutators taken by finite differences.
std::array<std::array<std::array<double, 3>, 3>, 3> hyperbolic_connection(double r, double theta, double psi);

}  // namespace charges::oracle
