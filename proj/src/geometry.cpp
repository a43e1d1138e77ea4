#include "charges/geometry.hpp"

#include <cmath>
#include <numbers>

namespace charges {

std::string to_string(Chart chart) {
  switch (chart) {
    case Chart::Cartesian:
      return "cartesian";
    case Chart::StaticPolar:
      return "static-polar";
    case Chart::Retarded:
      return "retarded";
  }
  return "unknown";
}

InitialData::InitialData(Frame frame, bool symmetric_p, Evaluator evaluator, std::string name)
    : frame_(frame), symmetric_p_(symmetric_p), evaluator_(std::move(evaluator)), name_(std::move(name)) {}

Vec3<Jet2> seed_chart_point(const Vec3<double>& y) {
  return {make_variable<Jet2>(y[0], 0), make_variable<Jet2>(y[1], 1), make_variable<Jet2>(y[2], 2)};
}

Mat3<Jet2> frame_jets(const Frame& frame, const Vec3<double>& y) { return frame.vectors(seed_chart_point(y)); }

namespace {

void check_point(const Metric4& metric, const SpacetimePoint& point) {
  if (point.chart != metric.chart())
    throw UsageError("point chart " + to_string(point.chart) + " does not match metric chart " +
                     to_string(metric.chart()));
  if (point.chart != Chart::Cartesian) {
    if (!(point.x[1] > 0.0)) throw DegenerateError("polar chart requires r > 0");
    if (!(point.x[2] > 0.0 && point.x[2] < std::numbers::pi))
      throw DegenerateError("polar chart requires theta in (0, pi)");
  }
}

template <class T>
std::array<Mat4<T>, 4> christoffel_from(const Mat4<T>& inv, const std::array<Mat4<T>, 4>& dg) {
  // dg[c][a][b] = d_c g_ab
  std::array<Mat4<T>, 4> gamma;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        T s(0.0);
        for (int d = 0; d < 4; ++d) s += inv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        gamma[a][b][c] = s * 0.5;
        gamma[a][c][b] = gamma[a][b][c];
      }
  return gamma;
}

}  // namespace

Christoffel4 christoffel4(const Metric4& metric, const SpacetimePoint& point) {
  check_point(metric, point);
  Vec4<D4> x;
  for (int a = 0; a < 4; ++a) x[a] = make_variable<D4>(point.x[a], a);
  const Mat4<D4> g = metric.eval(x);
  Mat4<double> g0;
  std::array<Mat4<double>, 4> dg;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      g0[a][b] = g[a][b].v;
      for (int c = 0; c < 4; ++c) dg[c][a][b] = g[a][b].d[c];
    }
  return christoffel_from(inverse4(g0), dg);
}

double ricci_residual(const Metric4& metric, const SpacetimePoint& point) {
  check_point(metric, point);
  Vec4<D44> x;
  for (int a = 0; a < 4; ++a) x[a] = make_variable<D44>(point.x[a], a);
  const Mat4<D44> g = metric.eval(x);
  Mat4<D4> g1;
  std::array<Mat4<D4>, 4> dg;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      g1[a][b] = g[a][b].v;
      for (int c = 0; c < 4; ++c) dg[c][a][b] = g[a][b].d[c];
    }
  const auto gamma = christoffel_from(inverse4(g1), dg);
  double norm2 = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double ric = 0.0;
      for (int a = 0; a < 4; ++a) {
        ric += gamma[a][b][d].d[a] - gamma[a][b][a].d[d];
        for (int e = 0; e < 4; ++e)
          ric += gamma[a][a][e].v * gamma[e][b][d].v - gamma[a][d][e].v * gamma[e][b][a].v;
      }
      norm2 += ric * ric;
    }
  return std::sqrt(norm2);
}

PointData pullback_point(const Metric4& metric, const Embedding& embedding, const Frame& frame,
                         const Vec3<double>& y) {
  using L = WideReal;
  Vec3<EmbeddingScalar> ys;
  for (int a = 0; a < 3; ++a) ys[a] = make_variable<EmbeddingScalar>(static_cast<L>(y[a]), a);
  const Vec4<EmbeddingScalar> X = embedding.eval(ys);

  Vec4<WJet2> phi;
  std::array<Vec4<WJet2>, 3> dphi;               // d_a Phi, two jet levels
  std::array<Vec4<WJet1>, 3> dphi1;              // d_a Phi, one jet level
  std::array<std::array<Vec4<WJet1>, 3>, 3> ddphi;  // d_a d_b Phi, one jet level
  for (int al = 0; al < 4; ++al) {
    phi[al] = X[al].v;
    for (int a = 0; a < 3; ++a) {
      dphi[a][al] = X[al].d[a];
      dphi1[a][al] = X[al].d[a].v;
      for (int b = 0; b < 3; ++b) ddphi[a][b][al] = X[al].d[a].d[b];
    }
  }

  const Mat4<WJet2> G = metric.eval(phi);

  Vec4<WideConnectionScalar> xs;
  for (int al = 0; al < 4; ++al) xs[al] = seed_outer<4>(phi[al].v, al);
  const Mat4<WideConnectionScalar> GX = metric.eval(xs);
  Mat4<WJet1> G1;
  std::array<Mat4<WJet1>, 4> dG;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      G1[a][b] = GX[a][b].v;
      for (int c = 0; c < 4; ++c) dG[c][a][b] = GX[a][b].d[c];
    }
  const Mat4<WJet1> Ginv = inverse4(G1);
  const auto gamma = christoffel_from(Ginv, dG);

  Vec3<WJet2> yw;
  for (int a = 0; a < 3; ++a) yw[a] = make_variable<WJet2>(static_cast<L>(y[a]), a);
  const Mat3<WJet2> E = frame.vectors(yw);

  // Frame vectors pushed forward to the slice tangent.
  std::array<Vec4<WJet2>, 3> tangent;
  for (int i = 0; i < 3; ++i)
    for (int al = 0; al < 4; ++al) {
      WJet2 s(0.0);
      for (int a = 0; a < 3; ++a) s += E[i][a] * dphi[a][al];
      tangent[i][al] = s;
    }

  Mat3<WJet2> g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      WJet2 s(0.0);
      for (int al = 0; al < 4; ++al) {
        WJet2 row(0.0);
        for (int be = 0; be < 4; ++be) row += G[al][be] * tangent[j][be];
        s += tangent[i][al] * row;
      }
      g[i][j] = s;
      g[j][i] = s;
    }

  // Normal covector n_a = eps_{abcd} A^b B^c C^d with A, B, C the chart tangents.
  const auto& A = dphi1[0];
  const auto& B = dphi1[1];
  const auto& C = dphi1[2];
  auto minor = [&](int c0, int c1, int c2) {
    return A[c0] * (B[c1] * C[c2] - B[c2] * C[c1]) - A[c1] * (B[c0] * C[c2] - B[c2] * C[c0]) +
           A[c2] * (B[c0] * C[c1] - B[c1] * C[c0]);
  };
  Vec4<WJet1> n_lo{minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)};
  Vec4<WJet1> n_up;
  for (int a = 0; a < 4; ++a) {
    WJet1 s(0.0);
    for (int b = 0; b < 4; ++b) s += Ginv[a][b] * n_lo[b];
    n_up[a] = s;
  }
  WJet1 norm2(0.0);
  for (int a = 0; a < 4; ++a) norm2 += n_lo[a] * n_up[a];
  if (!(value_of(norm2) < 0)) throw DegenerateError("slice is not spacelike at the requested point");
  WJet1 inv_norm = WJet1(1.0) / sqrt(-norm2);
  if (value_of(n_up[0]) < 0) inv_norm = -inv_norm;  // future-directed
  for (int a = 0; a < 4; ++a) n_lo[a] = n_lo[a] * inv_norm;

  Mat3<WJet1> h;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      WJet1 s(0.0);
      for (int al = 0; al < 4; ++al) {
        WJet1 acc = ddphi[a][b][al];
        for (int be = 0; be < 4; ++be) {
          WJet1 row(0.0);
          for (int ga = 0; ga < 4; ++ga) row += gamma[al][be][ga] * dphi1[b][ga];
          acc += row * dphi1[a][be];
        }
        s += n_lo[al] * acc;
      }
      h[a][b] = -s;
      h[b][a] = h[a][b];
    }

  Mat3<WJet1> p;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      WJet1 s(0.0);
      for (int a = 0; a < 3; ++a) {
        WJet1 row(0.0);
        for (int b = 0; b < 3; ++b) row += h[a][b] * E[j][b].v;
        s += E[i][a].v * row;
      }
      p[i][j] = s;
      p[j][i] = s;
    }

  PointData out;
  out.y = y;
  out.frame = frame_jets(frame, y);
  out.g = matrix_cast<Jet2>(g);
  out.p = matrix_cast<Jet1>(p);
  return out;
}

InitialData pullback_initial_data(MetricPtr metric, EmbeddingPtr embedding, Frame frame) {
  if (embedding->target_chart() != metric->chart())
    throw UsageError("embedding targets chart " + to_string(embedding->target_chart()) + " but metric uses " +
                     to_string(metric->chart()));
  if (embedding->source_chart() != frame.chart())
    throw UsageError("frame and embedding use different 3-charts");
  std::string name = metric->name() + " | " + embedding->name();
  return InitialData(
      frame, true,
      [metric = std::move(metric), embedding = std::move(embedding), frame](const Vec3<double>& y) {
        return pullback_point(*metric, *embedding, frame, y);
      },
      std::move(name));
}

namespace {

// Coordinate-basis geometry reconstructed from frame components.
struct Geometry3 {
  Mat3<double> E;      // frame vectors
  Mat3<double> G;      // coordinate metric
  Mat3<double> Ginv;
  Mat3<Jet1> P;        // coordinate p with first derivatives
  Mat3<Jet1> A;        // coordinate (p - p^T)
  std::array<Mat3<Jet1>, 3> gamma;  // Gamma^a_{bc}
  Riemann3 riemann_up;  // R^a_{bcd} stored [a][b][c][d]
};

Geometry3 build_geometry(const PointData& data) {
  Geometry3 geo;
  const Mat3<Jet2> Einv = inverse3(data.frame);
  // coframe theta^i_a = Einv[a][i]
  Mat3<Jet2> Gc;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      Jet2 s(0.0);
      for (int i = 0; i < 3; ++i) {
        Jet2 row(0.0);
        for (int j = 0; j < 3; ++j) row += data.g[i][j] * Einv[b][j];
        s += Einv[a][i] * row;
      }
      Gc[a][b] = s;
      Gc[b][a] = s;
    }
  Mat3<Jet1> Pc;
  Mat3<Jet1> Ac;
  Mat3<Jet1> anti;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) anti[i][j] = data.p[i][j] - data.p[j][i];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Jet1 s(0.0);
      Jet1 t(0.0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Jet1 w = Einv[a][i].v * Einv[b][j].v;
          s += w * data.p[i][j];
          t += w * anti[i][j];
        }
      Pc[a][b] = s;
      Ac[a][b] = t;
    }
  geo.P = Pc;
  geo.A = Ac;

  Mat3<Jet1> G1;
  std::array<Mat3<Jet1>, 3> dG;  // [c][a][b]
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      G1[a][b] = Gc[a][b].v;
      for (int c = 0; c < 3; ++c) dG[c][a][b] = Gc[a][b].d[c];
      geo.G[a][b] = Gc[a][b].v.v;
      geo.E[a][b] = data.frame[a][b].v.v;
    }
  const Mat3<Jet1> Ginv1 = inverse3(G1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) geo.Ginv[a][b] = Ginv1[a][b].v;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        Jet1 s(0.0);
        for (int d = 0; d < 3; ++d) s += Ginv1[a][d] * (dG[b][d][c] + dG[c][d][b] - dG[d][b][c]);
        geo.gamma[a][b][c] = s * 0.5;
        geo.gamma[a][c][b] = geo.gamma[a][b][c];
      }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double r = geo.gamma[a][d][b].d[c] - geo.gamma[a][c][b].d[d];
          for (int e = 0; e < 3; ++e)
            r += geo.gamma[a][c][e].v * geo.gamma[e][d][b].v - geo.gamma[a][d][e].v * geo.gamma[e][c][b].v;
          geo.riemann_up[a][b][c][d] = r;
        }
  return geo;
}

Riemann3 lower_first(const Geometry3& geo) {
  Riemann3 low{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int e = 0; e < 3; ++e) s += geo.G[a][e] * geo.riemann_up[e][b][c][d];
          low[a][b][c][d] = s;
        }
  return low;
}

// Transforms a covariant 4-tensor from coordinate to frame components.
Riemann3 to_frame(const Riemann3& t, const Mat3<double>& E) {
  Riemann3 a{};
  Riemann3 b{};
  // contract one slot at a time
  for (int i = 0; i < 3; ++i)
    for (int q = 0; q < 3; ++q)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          double v = 0.0;
          for (int p = 0; p < 3; ++p) v += E[i][p] * t[p][q][r][s];
          a[i][q][r][s] = v;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          double v = 0.0;
          for (int q = 0; q < 3; ++q) v += E[j][q] * a[i][q][r][s];
          b[i][j][r][s] = v;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int s = 0; s < 3; ++s) {
          double v = 0.0;
          for (int r = 0; r < 3; ++r) v += E[k][r] * b[i][j][r][s];
          a[i][j][k][s] = v;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double v = 0.0;
          for (int s = 0; s < 3; ++s) v += E[l][s] * a[i][j][k][s];
          b[i][j][k][l] = v;
        }
  return b;
}

// nabla_c T_ab for a coordinate 2-tensor with first derivatives; [c][a][b].
std::array<Mat3<double>, 3> covariant_derivative(const Mat3<Jet1>& T, const Geometry3& geo) {
  std::array<Mat3<double>, 3> out{};
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = T[a][b].d[c];
        for (int d = 0; d < 3; ++d) s -= geo.gamma[d][c][a].v * T[d][b].v + geo.gamma[d][c][b].v * T[a][d].v;
        out[c][a][b] = s;
      }
  return out;
}

double covector_norm(const Vec3<double>& w, const Mat3<double>& ginv) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += ginv[a][b] * w[a] * w[b];
  return std::sqrt(std::max(s, 0.0));
}

Vec3<double> covector_to_frame(const Vec3<double>& w, const Mat3<double>& E) {
  Vec3<double> out{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) out[i] += E[i][a] * w[a];
  return out;
}

}  // namespace

Curvature3 curvature3(const PointData& data) {
  const Geometry3 geo = build_geometry(data);
  Curvature3 out;
  out.riemann = to_frame(lower_first(geo), geo.E);
  double scalar = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) scalar += geo.Ginv[b][d] * geo.riemann_up[a][b][a][d];
  out.scalar = scalar;
  return out;
}

ConstraintQuantities constraint_quantities(const PointData& data) {
  const Geometry3 geo = build_geometry(data);
  double scalar = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) scalar += geo.Ginv[b][d] * geo.riemann_up[a][b][a][d];

  double trace = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) trace += geo.Ginv[a][b] * geo.P[a][b].v;
  double square = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) square += geo.P[a][b].v * geo.Ginv[a][c] * geo.Ginv[b][d] * geo.P[c][d].v;

  const auto dP = covariant_derivative(geo.P, geo);
  const auto dA = covariant_derivative(geo.A, geo);
  Vec3<double> varpi{};
  Vec3<double> sigma{};
  for (int b = 0; b < 3; ++b) {
    double div = 0.0;
    double grad_trace = 0.0;
    double anti = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) {
        div += geo.Ginv[a][c] * dP[c][b][a];
        grad_trace += geo.Ginv[a][c] * dP[b][a][c];
        anti += geo.Ginv[a][c] * dA[c][a][b];
      }
    varpi[b] = div - grad_trace;
    sigma[b] = 2.0 * anti;
  }
  ConstraintQuantities q;
  q.mu = 0.5 * (scalar + trace * trace - square);
  q.varpi_norm = covector_norm(varpi, geo.Ginv);
  Vec3<double> both{};
  for (int b = 0; b < 3; ++b) both[b] = varpi[b] + sigma[b];
  q.varpi_sigma_norm = covector_norm(both, geo.Ginv);
  q.varpi = covector_to_frame(varpi, geo.E);
  q.sigma = covector_to_frame(sigma, geo.E);
  return q;
}

std::array<Mat3<double>, 3> covariant_derivative_p(const PointData& data) {
  const Geometry3 geo = build_geometry(data);
  const auto dP = covariant_derivative(geo.P, geo);
  std::array<Mat3<double>, 3> out{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) s += geo.E[k][c] * geo.E[i][a] * geo.E[j][b] * dP[c][a][b];
        out[k][i][j] = s;
      }
  return out;
}

RigidityResidual rigidity_residual(const PointData& data) {
  const Geometry3 geo = build_geometry(data);
  const Riemann3 low = lower_first(geo);
  Riemann3 t{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          t[a][b][c][d] = low[a][b][c][d] + geo.P[a][c].v * geo.P[b][d].v - geo.P[a][d].v * geo.P[b][c].v;
  // Fully raised copy for the invariant norm.
  Riemann3 up = t;
  for (int slot = 0; slot < 4; ++slot) {
    Riemann3 next{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            double s = 0.0;
            for (int e = 0; e < 3; ++e) {
              std::array<int, 4> idx{a, b, c, d};
              const int free = idx[slot];
              idx[slot] = e;
              s += geo.Ginv[free][e] * up[idx[0]][idx[1]][idx[2]][idx[3]];
            }
            next[a][b][c][d] = s;
          }
    up = next;
  }
  double gauss2 = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) gauss2 += t[a][b][c][d] * up[a][b][c][d];

  const auto dP = covariant_derivative(geo.P, geo);
  std::array<Mat3<double>, 3> cod{};
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) cod[c][a][b] = dP[c][a][b] - dP[a][c][b];
  double cod2 = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
              cod2 += cod[c][a][b] * geo.Ginv[c][x] * geo.Ginv[a][y] * geo.Ginv[b][z] * cod[x][y][z];

  const auto dA = covariant_derivative(geo.A, geo);
  Vec3<double> anti{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c) anti[i] += geo.Ginv[j][c] * dA[c][i][j];

  RigidityResidual r;
  r.gauss = std::sqrt(std::max(gauss2, 0.0));
  r.codazzi = std::sqrt(std::max(cod2, 0.0));
  r.antisymmetry = covector_norm(anti, geo.Ginv);
  return r;
}

}  // namespace charges
