#include "charges/adm_charges.hpp"

#include <cmath>

namespace charges {

namespace {

void require_euclidean(const InitialData& data) {
  if (data.frame().kind != FrameKind::Euclidean) throw UsageError("ADM charges need the Euclidean frame");
}

// Coordinate components from frame components of a constant diagonal frame.
struct CoordinateData {
  Mat3<Jet2> g;
  Mat3<Jet1> h;
};

CoordinateData to_coordinates(const PointData& pd, const Vec3<double>& scale) {
  CoordinateData out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double w = 1.0 / (scale[a] * scale[b]);
      out.g[a][b] = pd.g[a][b] * w;
      out.h[a][b] = pd.p[a][b] * w;
    }
  return out;
}

Vec3<double> direction(double theta, double psi) {
  return {std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi), std::cos(theta)};
}

}  // namespace

AdmCharges adm_energy_momentum(const InitialData& data, std::span<const double> radii, const GridPtr& grid) {
  require_euclidean(data);
  validate_ladder(radii, 3);
  const Vec3<double> scale = data.frame().scale;
  AdmCharges out;
  out.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    std::vector<double> e(grid->size());
    std::array<std::vector<double>, 3> p;
    for (auto& v : p) v.resize(grid->size());
    parallel_for(grid->size(), [&](std::size_t k) {
      const Vec3<double> n = direction(grid->theta_of(k), grid->psi_of(k));
      const CoordinateData cd = to_coordinates(data({r * n[0], r * n[1], r * n[2]}), scale);
      double flux = 0.0;
      double tr_h = 0.0;
      for (int j = 0; j < 3; ++j) tr_h += cd.h[j][j].v;
      for (int i = 0; i < 3; ++i) {
        double v = 0.0;
        for (int j = 0; j < 3; ++j) v += cd.g[i][j].v.d[j] - cd.g[j][j].v.d[i];
        flux += v * n[i];
      }
      e[k] = flux;
      for (int c = 0; c < 3; ++c) {
        double v = 0.0;
        for (int i = 0; i < 3; ++i) v += (cd.h[c][i].v - cd.g[c][i].v.v * tr_h) * n[i];
        p[c][k] = v;
      }
    });
    // (1/16 pi) r^2 integral = (r^2 / 4) mean
    out.energy_samples.push_back(0.25 * r * r * project_multipole(SphereField(grid, std::move(e)), 0));
    for (int c = 0; c < 3; ++c)
      out.momentum_samples[c].push_back(0.5 * r * r * project_multipole(SphereField(grid, std::move(p[c])), 0));
  }
  out.energy = extrapolate_limit(radii, out.energy_samples);
  for (int c = 0; c < 3; ++c) out.momentum[c] = extrapolate_limit(radii, out.momentum_samples[c]);
  return out;
}

AfDecayReport check_af_decay(const InitialData& data, std::span<const double> radii, const GridPtr& grid) {
  require_euclidean(data);
  validate_ladder(radii, 4);
  const Vec3<double> scale = data.frame().scale;
  AfDecayReport rep;
  for (double r : radii) {
    std::vector<std::array<double, 5>> node(grid->size());
    parallel_for(grid->size(), [&](std::size_t k) {
      const Vec3<double> n = direction(grid->theta_of(k), grid->psi_of(k));
      const CoordinateData cd = to_coordinates(data({r * n[0], r * n[1], r * n[2]}), scale);
      std::array<double, 5> s{};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          s[0] = std::max(s[0], std::abs(cd.g[a][b].v.v - (a == b ? 1.0 : 0.0)));
          s[3] = std::max(s[3], std::abs(cd.h[a][b].v));
          for (int c = 0; c < 3; ++c) {
            s[1] = std::max(s[1], std::abs(cd.g[a][b].v.d[c]));
            s[4] = std::max(s[4], std::abs(cd.h[a][b].d[c]));
            for (int e = 0; e < 3; ++e) s[2] = std::max(s[2], std::abs(cd.g[a][b].d[c].d[e]));
          }
        }
      node[k] = s;
    });
    for (int q = 0; q < 5; ++q) {
      double s = 0.0;
      for (const auto& row : node) s = std::max(s, row[q]);
      rep.sup_norm[q].push_back(s);
    }
  }
  rep.all_ok = true;
  for (int q = 0; q < 5; ++q) {
    rep.fit[q] = fit_decay(radii, rep.sup_norm[q]);
    rep.ok[q] = rep.fit[q].exact_zero || rep.fit[q].exponent >= AfDecayReport::kRequired[q] - kDecaySlack;
    rep.all_ok = rep.all_ok && rep.ok[q];
  }
  return rep;
}

std::vector<double> check_dec_flat(const InitialData& data, std::span<const Vec3<double>> points) {
  std::vector<double> margins(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    const ConstraintQuantities q = constraint_quantities(data(points[k]));
    margins[k] = q.mu - q.varpi_norm;
  });
  return margins;
}

double check_pmt_flat(double energy, const Vec3<double>& p) {
  return energy - std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

double check_pmt_flat(const AdmCharges& charges) { return check_pmt_flat(charges.E(), charges.P()); }

std::vector<Vec3<double>> sphere_points(std::span<const double> radii, const GridPtr& grid, Chart3 chart) {
  std::vector<Vec3<double>> pts;
  pts.reserve(radii.size() * grid->size());
  for (double r : radii)
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const double th = grid->theta_of(k);
      const double ps = grid->psi_of(k);
      if (chart == Chart3::Polar) {
        pts.push_back({r, th, ps});
      } else {
        const Vec3<double> n = direction(th, ps);
        pts.push_back({r * n[0], r * n[1], r * n[2]});
      }
    }
  return pts;
}

namespace {

// f'(y') = f(R^T y'): derivatives transform with R.
Jet1 rotate_jet(const Jet1& f, const Mat3<double>& R) {
  Jet1 out;
  out.v = f.v;
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) s += R[c][d] * f.d[d];
    out.d[c] = s;
  }
  return out;
}

Jet2 rotate_jet(const Jet2& f, const Mat3<double>& R) {
  Jet2 out;
  out.v = rotate_jet(f.v, R);
  for (int c = 0; c < 3; ++c) {
    Jet1 s(0.0);
    for (int d = 0; d < 3; ++d) s += f.d[d] * R[c][d];
    out.d[c] = rotate_jet(s, R);
  }
  return out;
}

template <class J>
Mat3<J> rotate_tensor(const Mat3<J>& t, const Mat3<double>& R) {
  Mat3<J> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      J s(0.0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += rotate_jet(t[i][j], R) * (R[a][i] * R[b][j]);
      out[a][b] = s;
    }
  return out;
}

}  // namespace

InitialData rotate_initial_data(const InitialData& data, const Mat3<double>& R) {
  require_euclidean(data);
  const Vec3<double> sc = data.frame().scale;
  if (sc[0] != 1.0 || sc[1] != 1.0 || sc[2] != 1.0) throw UsageError("rotation needs a unit Euclidean frame");
  return InitialData(
      data.frame(), data.symmetric_p(),
      [data, R](const Vec3<double>& yp) {
        Vec3<double> y{};
        for (int i = 0; i < 3; ++i)
          for (int a = 0; a < 3; ++a) y[i] += R[a][i] * yp[a];
        PointData pd = data(y);
        pd.y = yp;
        pd.g = rotate_tensor(pd.g, R);
        pd.p = rotate_tensor(pd.p, R);
        return pd;
      },
      data.name() + " (rotated)");
}

InitialData bowen_york_test_data(double m, const Vec3<double>& P) {
  const Frame frame{FrameKind::Euclidean};
  return InitialData(
      frame, true,
      [m, P, frame](const Vec3<double>& y) {
        const Vec3<Jet2> x = seed_chart_point(y);
        const Jet2 r = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const Jet2 psi = 1.0 + m / (r * 2.0);
        const Jet2 psi4 = ipow(psi, 4);
        Vec3<Jet2> n;
        for (int i = 0; i < 3; ++i) n[i] = x[i] / r;
        Jet2 pn(0.0);
        for (int i = 0; i < 3; ++i) pn += n[i] * P[i];
        const Jet2 pre = 1.5 / (r * r);
        PointData pd;
        pd.y = y;
        pd.frame = frame_jets(frame, y);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double delta = i == j ? 1.0 : 0.0;
            pd.g[i][j] = psi4 * delta;
            const Jet2 k = pre * (n[j] * P[i] + n[i] * P[j] - (n[i] * n[j] * -1.0 + delta) * pn);
            pd.p[i][j] = k.v;
          }
        return pd;
      },
      "bowen-york test data");
}

}  // namespace charges
