#include "charges/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "charges/errors.hpp"

namespace charges {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(z), p0 = P_{n-1}(z)
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at converged node
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

void require_same_grid(const SphereField& a, const SphereField& b) {
  if (a.grid() != b.grid() && (a.grid()->n_theta() != b.grid()->n_theta() ||
                               a.grid()->n_psi() != b.grid()->n_psi())) {
    throw UsageError("sphere fields live on different grids");
  }
}

}  // namespace

SphereGrid::SphereGrid(int n_theta, int n_psi) : n_theta_(n_theta), n_psi_(n_psi) {
  if (n_theta < 2) throw ConfigError("n_theta must be >= 2, got " + std::to_string(n_theta));
  if (n_psi < 4 || n_psi % 2 != 0)
    throw ConfigError("n_psi must be even and >= 4, got " + std::to_string(n_psi));
  std::vector<double> x;
  gauss_legendre(n_theta, x, gauss_weight_);
  // x is descending (cos theta), so theta ascends.
  theta_.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) theta_[i] = std::acos(x[i]);
  psi_step_ = 2.0 * kPi / n_psi;
  psi_.resize(n_psi);
  for (int j = 0; j < n_psi; ++j) psi_[j] = psi_step_ * j;
}

GridPtr build_grid(int n_theta, int n_psi) { return std::make_shared<const SphereGrid>(n_theta, n_psi); }

SphereField::SphereField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) throw UsageError("sphere field size does not match grid");
}

SphereField::SphereField(GridPtr grid, double constant)
    : grid_(std::move(grid)), values_(grid_->size(), constant) {}

SphereField& SphereField::operator+=(const SphereField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}
SphereField& SphereField::operator-=(const SphereField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}
SphereField& SphereField::operator*=(const SphereField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= o.values_[k];
  return *this;
}
SphereField& SphereField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

SphereField operator+(SphereField a, const SphereField& b) { return a += b; }
SphereField operator-(SphereField a, const SphereField& b) { return a -= b; }
SphereField operator*(SphereField a, const SphereField& b) { return a *= b; }
SphereField operator*(double s, SphereField a) { return a *= s; }

double integrate(const SphereField& f) {
  const SphereGrid& grid = *f.grid();
  std::vector<double> terms(f.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!std::isfinite(f[k])) throw NonFiniteError("non-finite sample in sphere integral");
    terms[k] = grid.weight_of(k) * f[k];
  }
  return pairwise_sum(terms);
}

std::array<SphereField, 4> direction_functions(const GridPtr& grid) {
  return {SphereField(grid, 1.0),
          sample_serial(grid, [](double th, double ps) { return std::sin(th) * std::cos(ps); }),
          sample_serial(grid, [](double th, double ps) { return std::sin(th) * std::sin(ps); }),
          sample_serial(grid, [](double th, double) { return std::cos(th); })};
}

double project_multipole(const SphereField& f, int nu) {
  if (nu < 0 || nu > 3) throw UsageError("multipole index must be in 0..3, got " + std::to_string(nu));
  if (nu == 0) return integrate(f) / (4.0 * kPi);
  const auto n = direction_functions(f.grid());
  return integrate(f * n[nu]) / (4.0 * kPi);
}

std::array<double, 4> multipoles(const SphereField& f) {
  const auto n = direction_functions(f.grid());
  std::array<double, 4> m{};
  for (int nu = 0; nu < 4; ++nu) m[nu] = integrate(f * n[nu]) / (4.0 * kPi);
  return m;
}

std::vector<double> first_derivative_weights(std::span<const double> nodes, double x0) {
  // Fornberg (1988), derivative orders 0 and 1.
  const int n = static_cast<int>(nodes.size());
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

namespace {

SphereField psi_derivative(const SphereField& f) {
  const SphereGrid& g = *f.grid();
  const int n = g.n_psi();
  const double h = 2.0 * kPi / n;
  // Periodic spectral differentiation matrix for even n.
  std::vector<double> col(n, 0.0);
  for (int k = 1; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    col[k] = 0.5 * sign / std::tan(0.5 * k * h);
  }
  SphereField out(f.grid());
  parallel_for(static_cast<std::size_t>(g.n_theta()), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const int diff = ((j - k) % n + n) % n;
        s += col[diff] * f(i, k);
      }
      out(i, j) = s;
    }
  });
  return out;
}

SphereField theta_derivative(const SphereField& f) {
  const SphereGrid& g = *f.grid();
  const int nt = g.n_theta();
  const int np = g.n_psi();
  const int ghosts = std::min(4, nt);
  const int half = ghosts;
  // Extended theta line: reflected nodes below 0, real nodes, reflected above pi.
  std::vector<double> ext_theta;
  std::vector<int> ext_row;   // source row
  std::vector<bool> ext_flip;  // psi shifted by pi
  for (int k = ghosts - 1; k >= 0; --k) {
    ext_theta.push_back(-g.theta(k));
    ext_row.push_back(k);
    ext_flip.push_back(true);
  }
  for (int i = 0; i < nt; ++i) {
    ext_theta.push_back(g.theta(i));
    ext_row.push_back(i);
    ext_flip.push_back(false);
  }
  for (int k = 0; k < ghosts; ++k) {
    ext_theta.push_back(2.0 * kPi - g.theta(nt - 1 - k));
    ext_row.push_back(nt - 1 - k);
    ext_flip.push_back(true);
  }
  std::vector<std::vector<double>> weights(nt);
  for (int i = 0; i < nt; ++i) {
    const int center = i + ghosts;
    std::span<const double> nodes(ext_theta.data() + center - half, 2 * half + 1);
    weights[i] = first_derivative_weights(nodes, g.theta(i));
  }
  SphereField out(f.grid());
  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const int center = i + ghosts;
    for (int j = 0; j < np; ++j) {
      double s = 0.0;
      for (int q = 0; q < 2 * half + 1; ++q) {
        const int e = center - half + q;
        const int jj = ext_flip[e] ? (j + np / 2) % np : j;
        s += weights[i][q] * f(ext_row[e], jj);
      }
      out(i, j) = s;
    }
  });
  return out;
}

}  // namespace

SphereField angular_derivative(const SphereField& f, Axis axis) {
  return axis == Axis::Psi ? psi_derivative(f) : theta_derivative(f);
}

}  // namespace charges
