#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace charges::oracle {

double derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

double sphere_integral(const std::function<double(double, double)>& f, int n_theta, int n_psi) {
  const double pi = std::numbers::pi;
  if (n_theta % 2) ++n_theta;
  const double ht = pi / n_theta;
  const double hp = 2.0 * pi / n_psi;
  double total = 0.0;
  for (int i = 0; i <= n_theta; ++i) {
    const double th = i * ht;
    const double w = (i == 0 || i == n_theta) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double ring = 0.0;
    for (int j = 0; j < n_psi; ++j) ring += f(th, j * hp);
    total += w * ring * hp * std::sin(th);
  }
  return total * ht / 3.0;
}

std::array<double, 4> sphere_moments(const std::function<double(double, double)>& f) {
  const double four_pi = 4.0 * std::numbers::pi;
  std::array<double, 4> m{};
  m[0] = sphere_integral(f) / four_pi;
  m[1] = sphere_integral([&](double t, double p) { return f(t, p) * std::sin(t) * std::cos(p); }) / four_pi;
  m[2] = sphere_integral([&](double t, double p) { return f(t, p) * std::sin(t) * std::sin(p); }) / four_pi;
  m[3] = sphere_integral([&](double t, double p) { return f(t, p) * std::cos(t); }) / four_pi;
  return m;
}

double direction_product_mean(int nu, int mu) {
  if (nu != mu) return 0.0;
  return nu == 0 ? 1.0 : 1.0 / 3.0;
}

namespace {

using V3 = std::array<double, 3>;

// Coordinate components of the frame vector i at (r, theta, psi).
V3 frame_vector(int i, const V3& y) {
  const double r = y[0];
  if (i == 0) return {std::sqrt(1.0 + r * r), 0.0, 0.0};
  if (i == 1) return {0.0, 1.0 / r, 0.0};
  return {0.0, 0.0, 1.0 / (r * std::sin(y[1]))};
}

double metric_product(const V3& y, const V3& a, const V3& b) {
  const double r = y[0];
  const double s = std::sin(y[1]);
  return a[0] * b[0] / (1.0 + r * r) + r * r * a[1] * b[1] + r * r * s * s * a[2] * b[2];
}

// [e_i, e_j]^b = e_i^a d_a e_j^b - e_j^a d_a e_i^b
V3 commutator(int i, int j, const V3& y) {
  V3 out{};
  const V3 ei = frame_vector(i, y);
  const V3 ej = frame_vector(j, y);
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) {
      auto component = [&](int k) {
        return [&, k](double x) {
          V3 z = y;
          z[a] = x;
          return frame_vector(k, z)[b];
        };
      };
      const double h = 1e-4 * std::max(1.0, std::abs(y[a]));
      out[b] += ei[a] * derivative(component(j), y[a], h) - ej[a] * derivative(component(i), y[a], h);
    }
  }
  return out;
}

}  // namespace

std::array<std::array<std::array<double, 3>, 3>, 3> hyperbolic_connection(double r, double theta, double psi) {
  const V3 y{r, theta, psi};
  // c[i][j][k] = <[e_i, e_j], e_k>
  double c[3][3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const V3 cij = commutator(i, j, y);
      for (int k = 0; k < 3; ++k) c[i][j][k] = metric_product(y, cij, frame_vector(k, y));
    }
  std::array<std::array<std::array<double, 3>, 3>, 3> g{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[k][i][j] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
  return g;
}

}  // namespace charges::oracle
