#include "charges/null_charges.hpp"

#include <cmath>

namespace charges {

FrameConnection background_connection(const Vec3<double>& y) {
  const double r = y[0];
  if (!(r > 0.0)) throw DegenerateError("background connection needs r > 0");
  const double s = std::sqrt(1.0 + r * r);
  const double cot = std::cos(y[1]) / std::sin(y[1]);
  FrameConnection g{};
  g[0][1][1] = -s / r;
  g[0][2][2] = -s / r;
  g[1][1][0] = s / r;
  g[2][2][0] = s / r;
  g[1][2][2] = -cot / r;
  g[2][2][1] = cot / r;
  return g;
}

NullDeviation deviation(const PointData& data) {
  NullDeviation dev;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      dev.a[i][j] = data.g[i][j].v - delta;
      dev.b[i][j] = data.p[i][j] - delta;
      dev.g[i][j] = data.g[i][j].v.v;
    }
  return dev;
}

namespace {

double frame_derivative(const Mat3<double>& E, int k, const Jet1& f) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) s += E[k][a] * f.d[a];
  return s;
}

}  // namespace

ChargeIntegrand charge_integrand(const PointData& data, const ConnectionFn& connection) {
  const NullDeviation dev = deviation(data);
  const FrameConnection gam = connection(data.y);
  Mat3<double> E;
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) E[i][a] = data.frame[i][a].v.v;

  // sum_j (nabla_j a)_{1j}
  double div = 0.0;
  for (int j = 0; j < 3; ++j) {
    double v = frame_derivative(E, j, dev.a[0][j]);
    for (int m = 0; m < 3; ++m) v -= gam[m][j][0] * dev.a[m][j].v + gam[m][j][j] * dev.a[0][m].v;
    div += v;
  }
  Jet1 tr_a = dev.a[0][0] + dev.a[1][1] + dev.a[2][2];
  const double tr_b = dev.b[0][0].v + dev.b[1][1].v + dev.b[2][2].v;

  ChargeIntegrand out;
  out.energy = div - frame_derivative(E, 0, tr_a) - (dev.a[0][0].v - dev.g[0][0] * tr_a.v);
  for (int k = 0; k < 3; ++k) out.momentum[k] = dev.b[k][0].v - dev.g[k][0] * tr_b;
  return out;
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kSymmetricPairs = {{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

std::string component_name(char tensor, int i, int j) {
  return std::string(1, tensor) + std::to_string(i + 1) + std::to_string(j + 1);
}

// Component list: a (symmetric, 6) then b (all 9).
std::vector<std::string> deviation_names() {
  std::vector<std::string> names;
  for (const auto& [i, j] : kSymmetricPairs) names.push_back(component_name('a', i, j));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) names.push_back(component_name('b', i, j));
  return names;
}

std::array<double, 15> deviation_values(const NullDeviation& dev) {
  std::array<double, 15> v{};
  int k = 0;
  for (const auto& [i, j] : kSymmetricPairs) v[k++] = dev.a[i][j].v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[k++] = dev.b[i][j].v;
  return v;
}

void require_hyperbolic(const InitialData& data) {
  if (data.frame().kind != FrameKind::Hyperbolic) throw UsageError("null charges need data in the hyperbolic frame");
}

struct NodeSample {
  ChargeIntegrand integrand;
  std::array<double, 15> deviation{};
};

std::vector<NodeSample> sample_sphere(const InitialData& data, double r, const GridPtr& grid,
                                      const ConnectionFn& connection, bool parallel) {
  std::vector<NodeSample> out(grid->size());
  auto body = [&](std::size_t k) {
    const PointData pd = data({r, grid->theta_of(k), grid->psi_of(k)});
    out[k].integrand = charge_integrand(pd, connection);
    out[k].deviation = deviation_values(deviation(pd));
  };
  if (parallel) {
    parallel_for(out.size(), body);
  } else {
    serial_for(out.size(), body);
  }
  return out;
}

std::vector<ComponentDecay> fit_components(std::span<const double> radii,
                                           const std::vector<std::array<double, 15>>& sup) {
  const auto names = deviation_names();
  std::vector<ComponentDecay> out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    ComponentDecay cd;
    cd.name = names[c];
    for (const auto& row : sup) cd.sup_norm.push_back(row[c]);
    cd.fit = fit_decay(radii, cd.sup_norm);
    out.push_back(std::move(cd));
  }
  return out;
}

}  // namespace

std::vector<ComponentDecay> estimate_decay_orders(const InitialData& data, std::span<const double> radii,
                                                  const GridPtr& grid) {
  require_hyperbolic(data);
  validate_ladder(radii, 2);
  std::vector<std::array<double, 15>> sup;
  for (double r : radii) {
    const auto nodes = sample_sphere(data, r, grid, background_connection, true);
    std::array<double, 15> s{};
    for (const auto& n : nodes)
      for (int c = 0; c < 15; ++c) s[c] = std::max(s[c], std::abs(n.deviation[c]));
    sup.push_back(s);
  }
  return fit_components(radii, sup);
}

DecayFit estimate_decay_order(const InitialData& data, const std::string& component, std::span<const double> radii,
                              const GridPtr& grid) {
  const auto names = deviation_names();
  bool known = false;
  for (const auto& n : names) known = known || n == component;
  if (!known) throw UsageError("unknown deviation component '" + component + "'");
  for (auto& cd : estimate_decay_orders(data, radii, grid))
    if (cd.name == component) return cd.fit;
  return {};
}

NullCharges null_energy_momentum(const InitialData& data, std::span<const double> radii, const GridPtr& grid,
                                 const NullChargeOptions& options) {
  require_hyperbolic(data);
  validate_ladder(radii, 3);
  NullCharges out;
  out.radii.assign(radii.begin(), radii.end());
  std::vector<std::array<double, 15>> sup;
  for (double r : radii) {
    const auto nodes = sample_sphere(data, r, grid, options.connection, options.parallel);
    std::vector<double> e(nodes.size());
    std::array<std::vector<double>, 3> p;
    for (auto& v : p) v.resize(nodes.size());
    std::array<double, 15> s{};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      e[k] = nodes[k].integrand.energy;
      for (int c = 0; c < 3; ++c) p[c][k] = nodes[k].integrand.momentum[c];
      for (int c = 0; c < 15; ++c) s[c] = std::max(s[c], std::abs(nodes[k].deviation[c]));
    }
    sup.push_back(s);
    const double r3 = r * r * r;
    const auto em = multipoles(SphereField(grid, std::move(e)));
    std::array<std::array<double, 4>, 3> pm;
    for (int c = 0; c < 3; ++c) pm[c] = multipoles(SphereField(grid, std::move(p[c])));
    for (int nu = 0; nu < 4; ++nu) {
      // (1/16 pi) r^3 integral = r^3 (4 pi / 16 pi) moment
      out.energy_samples[nu].push_back(0.25 * r3 * em[nu]);
      for (int c = 0; c < 3; ++c) out.momentum_samples[nu][c].push_back(0.5 * r3 * pm[c][nu]);
      out.combination_samples[nu].push_back(0.25 * r3 * em[nu] - 0.5 * r3 * pm[0][nu]);
    }
  }
  for (int nu = 0; nu < 4; ++nu) {
    out.energy[nu] = extrapolate_limit(radii, out.energy_samples[nu]);
    for (int c = 0; c < 3; ++c) out.momentum[nu][c] = extrapolate_limit(radii, out.momentum_samples[nu][c]);
    out.combination[nu] = extrapolate_limit(radii, out.combination_samples[nu]);
  }
  out.decay = fit_components(radii, sup);
  out.tau_exact = true;
  out.tau_hat = INFINITY;
  for (const auto& cd : out.decay) {
    if (cd.fit.exact_zero) continue;
    out.tau_exact = false;
    out.tau_hat = std::min(out.tau_hat, cd.fit.exponent);
  }
  out.gate_passed = out.tau_hat >= kTauGate;
  return out;
}

std::vector<double> check_dec_null(const InitialData& data, std::span<const Vec3<double>> points) {
  std::vector<double> margins(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    const ConstraintQuantities q = constraint_quantities(data(points[k]));
    margins[k] = q.mu - std::max(q.varpi_norm, q.varpi_sigma_norm);
  });
  return margins;
}

double check_pmt_null(const std::array<double, 4>& combination) {
  double s = 0.0;
  for (int i = 1; i < 4; ++i) s += combination[i] * combination[i];
  return combination[0] - std::sqrt(s);
}

double check_pmt_null(const NullCharges& charges) {
  std::array<double, 4> c{};
  for (int nu = 0; nu < 4; ++nu) c[nu] = charges.combination[nu].limit;
  return check_pmt_null(c);
}

}  // namespace charges
