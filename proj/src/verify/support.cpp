#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace charges::verify_detail {

namespace {

constexpr double kPi = std::numbers::pi;

// Richardson-combined central difference of every component along axis a.
template <class Get>
std::vector<double> fd_along(const JetEvaluator& f, const std::vector<double>& x, int a, double h, Get get) {
  auto at = [&](double step) {
    std::vector<double> y = x;
    y[a] += step;
    return get(f(y));
  };
  const auto p1 = at(h), m1 = at(-h), p2 = at(0.5 * h), m2 = at(-0.5 * h);
  std::vector<double> out(p1.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const double d1 = (p1[c] - m1[c]) / (2.0 * h);
    const double d2 = (p2[c] - m2[c]) / h;
    out[c] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

double rel_error(double exact, double approx) { return std::abs(exact - approx) / std::max(std::abs(exact), 1.0); }

}  // namespace

double dual_vs_fd(const JetEvaluator& f, const PointDraw& draw, Rng& rng, int points) {
  double worst = 0.0;
  for (int n = 0; n < points; ++n) {
    const std::vector<double> x = draw(rng);
    const JetSample s = f(x);
    const int dim = static_cast<int>(x.size());
    for (int a = 0; a < dim; ++a) {
      const double h = 1e-4 * std::max(1.0, std::abs(x[a]));
      const auto dv = fd_along(f, x, a, h, [](const JetSample& j) { return j.v; });
      for (std::size_t c = 0; c < s.v.size(); ++c) worst = std::max(worst, rel_error(s.d1[c][a], dv[c]));
      // second derivatives from differences of the dual first derivatives
      const auto dd = fd_along(f, x, a, h, [](const JetSample& j) {
        std::vector<double> flat;
        for (std::size_t c = 0; c < j.d1.size(); ++c)
          if (!j.d2[c].empty()) flat.insert(flat.end(), j.d1[c].begin(), j.d1[c].end());
        return flat;
      });
      std::size_t k = 0;
      for (std::size_t c = 0; c < s.v.size(); ++c) {
        if (s.d2[c].empty()) continue;
        for (int b = 0; b < dim; ++b) worst = std::max(worst, rel_error(s.d2[c][b][a], dd[k++]));
      }
    }
  }
  return worst;
}

JetEvaluator metric_jets(MetricPtr metric) {
  return [metric](const std::vector<double>& x) {
    Vec4<D44> xs;
    for (int a = 0; a < 4; ++a) xs[a] = make_variable<D44>(x[a], a);
    const Mat4<D44> G = metric->eval(xs);
    JetSample s;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const D44& g = G[i][j];
        s.v.push_back(g.v.v);
        std::vector<double> d1(4);
        std::vector<std::vector<double>> d2(4, std::vector<double>(4));
        for (int a = 0; a < 4; ++a) {
          d1[a] = g.v.d[a];
          for (int b = 0; b < 4; ++b) d2[a][b] = g.d[a].d[b];
        }
        s.d1.push_back(d1);
        s.d2.push_back(d2);
      }
    return s;
  };
}

JetEvaluator embedding_jets(EmbeddingPtr embedding) {
  return [embedding](const std::vector<double>& y) {
    Vec3<EmbeddingScalar> ys;
    for (int a = 0; a < 3; ++a) ys[a] = make_variable<EmbeddingScalar>(static_cast<WideReal>(y[a]), a);
    const Vec4<EmbeddingScalar> X = embedding->eval(ys);
    JetSample s;
    for (int al = 0; al < 4; ++al) {
      s.v.push_back(static_cast<double>(X[al].v.v.v));
      std::vector<double> d1(3);
      std::vector<std::vector<double>> d2(3, std::vector<double>(3));
      for (int a = 0; a < 3; ++a) {
        d1[a] = static_cast<double>(X[al].v.v.d[a]);
        for (int b = 0; b < 3; ++b) d2[a][b] = static_cast<double>(X[al].v.d[a].d[b]);
      }
      s.d1.push_back(d1);
      s.d2.push_back(d2);
    }
    return s;
  };
}

JetEvaluator initial_data_jets(InitialData data) {
  return [data](const std::vector<double>& y) {
    const PointData pd = data({y[0], y[1], y[2]});
    JetSample s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Jet2& g = pd.g[i][j];
        s.v.push_back(g.v.v);
        std::vector<double> d1(3);
        std::vector<std::vector<double>> d2(3, std::vector<double>(3));
        for (int a = 0; a < 3; ++a) {
          d1[a] = g.v.d[a];
          for (int b = 0; b < 3; ++b) d2[a][b] = g.d[a].d[b];
        }
        s.d1.push_back(d1);
        s.d2.push_back(d2);
      }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        s.v.push_back(pd.p[i][j].v);
        s.d1.push_back({pd.p[i][j].d[0], pd.p[i][j].d[1], pd.p[i][j].d[2]});
        s.d2.emplace_back();
      }
    return s;
  };
}

PointDraw polar4_draw(double r_lo, double r_hi, double t_lo, double t_hi) {
  return [=](Rng& rng) {
    return std::vector<double>{rng.uniform(t_lo, t_hi), rng.uniform(r_lo, r_hi), rng.uniform(0.2, kPi - 0.2),
                               rng.uniform(0.0, 2.0 * kPi)};
  };
}

PointDraw cartesian4_draw(double extent) {
  return [=](Rng& rng) {
    return std::vector<double>{rng.uniform(-extent, extent), rng.uniform(-extent, extent),
                               rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
  };
}

PointDraw polar3_draw(double r_lo, double r_hi) {
  return [=](Rng& rng) {
    return std::vector<double>{rng.uniform(r_lo, r_hi), rng.uniform(0.2, kPi - 0.2), rng.uniform(0.0, 2.0 * kPi)};
  };
}

PointDraw cartesian3_draw(double r_lo, double r_hi) {
  return [=](Rng& rng) {
    const auto p = random_cartesian_points(rng, 1, r_lo, r_hi).front();
    return std::vector<double>{p[0], p[1], p[2]};
  };
}

std::vector<Vec3<double>> random_polar_points(Rng& rng, int n, double r_lo, double r_hi) {
  std::vector<Vec3<double>> out;
  for (int k = 0; k < n; ++k)
    out.push_back({rng.uniform(r_lo, r_hi), rng.uniform(0.1, kPi - 0.1), rng.uniform(0.0, 2.0 * kPi)});
  return out;
}

std::vector<Vec3<double>> random_cartesian_points(Rng& rng, int n, double r_lo, double r_hi) {
  std::vector<Vec3<double>> out;
  for (int k = 0; k < n; ++k) {
    const double r = rng.uniform(r_lo, r_hi);
    const double z = rng.uniform(-0.95, 0.95);
    const double ph = rng.uniform(0.0, 2.0 * kPi);
    const double s = std::sqrt(1.0 - z * z);
    out.push_back({r * s * std::cos(ph), r * s * std::sin(ph), r * z});
  }
  return out;
}

BondiExpansion news_off_expansion(double amplitude, double m, double tilt, double u0) {
  const TrigPoly c = TrigPoly::term(amplitude, 2, 2, 0) + TrigPoly::term(-2.0 * amplitude * u0, 1, 2, 0) +
                     TrigPoly::term(amplitude * u0 * u0, 0, 2, 0);
  const TrigPoly M = TrigPoly::constant(m) + TrigPoly::term(m * tilt, 0, 0, 1);
  return BondiExpansion::make(c, {}, {}, {}, M, {}, {});
}

}  // namespace charges::verify_detail
