#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "charges/errors.hpp"
#include "charges/extrapolation.hpp"
#include "charges/spacetimes.hpp"

using namespace charges;

namespace {

constexpr double kPi = std::numbers::pi;

Mat4<double> at(const MetricPtr& g, double x0, double r, double th, double ps) { return g->eval(Vec4<double>{x0, r, th, ps}); }

double max_diff(const Mat4<double>& a, const Mat4<double>& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

double det4(Mat4<double> a) {
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

struct PolarDraw {
  std::mt19937_64 rng{20240601};
  Vec4<double> operator()(double r_lo, double r_hi) {
    std::uniform_real_distribution<double> r(r_lo, r_hi), th(0.1, kPi - 0.1), ps(0.0, 2.0 * kPi), t(-5.0, 5.0);
    return {t(rng), r(rng), th(rng), ps(rng)};
  }
};

}  // namespace

TEST_SUITE("spacetimes") {
  TEST_CASE("Minkowski components") {
    const auto p = at(minkowski(Chart::StaticPolar), 0.0, 3.0, 1.1, 0.4);
    CHECK(p[0][0] == -1.0);
    CHECK(p[1][1] == 1.0);
    CHECK(p[2][2] == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(p[3][3] == doctest::Approx(9.0 * std::pow(std::sin(1.1), 2)).epsilon(1e-15));
    const auto u = at(minkowski(Chart::Retarded), 0.0, 3.0, 1.1, 0.4);
    CHECK(u[0][0] == -1.0);
    CHECK(u[0][1] == -1.0);
    CHECK(u[1][1] == 0.0);
  }

  TEST_CASE("Minkowski is flat") {
    PolarDraw draw;
    const auto g = minkowski(Chart::StaticPolar);
    for (int n = 0; n < 20; ++n) CHECK(ricci_residual(*g, {Chart::StaticPolar, draw(0.5, 50.0)}) <= 1e-9);
  }

  TEST_CASE("Schwarzschild components and exterior restriction") {
    const double m = 1.3;
    const auto s = at(schwarzschild(m, Chart::StaticPolar), 0.0, 7.0, 1.0, 2.0);
    CHECK(s[0][0] == doctest::Approx(-(1.0 - 2.0 * m / 7.0)).epsilon(1e-15));
    CHECK(s[1][1] == doctest::Approx(1.0 / (1.0 - 2.0 * m / 7.0)).epsilon(1e-15));
    const auto r = at(schwarzschild(m, Chart::Retarded), 0.0, 7.0, 1.0, 2.0);
    CHECK(r[0][1] == -1.0);
    CHECK(r[0][0] == doctest::Approx(-(1.0 - 2.0 * m / 7.0)).epsilon(1e-15));
    CHECK_THROWS_AS(schwarzschild(m, Chart::StaticPolar)->eval(Vec4<double>{0.0, 2.0 * m, 1.0, 0.0}),
                    DegenerateError);
  }

  TEST_CASE("Schwarzschild is vacuum") {
    PolarDraw draw;
    for (Chart c : {Chart::StaticPolar, Chart::Retarded}) {
      const auto g = schwarzschild(1.0, c);
      for (int n = 0; n < 20; ++n) CHECK(ricci_residual(*g, {c, draw(3.0, 60.0)}) <= 1e-8);
    }
  }

  TEST_CASE("parameter degenerations") {
    PolarDraw draw;
    for (int n = 0; n < 20; ++n) {
      const auto x = draw(3.0, 60.0);
      CHECK(max_diff(kerr({1.0, 0.0})->eval(x), schwarzschild(1.0, Chart::StaticPolar)->eval(x)) <= 1e-14);
      CHECK(max_diff(schwarzschild(1e-300, Chart::StaticPolar)->eval(x), minkowski(Chart::StaticPolar)->eval(x)) <=
            1e-12);
      const auto b = bondi_metric(schwarzschild_expansion(1.0), 2.5);
      CHECK(max_diff(b->eval(x), schwarzschild(1.0, Chart::Retarded)->eval(x)) <= 1e-12);
    }
  }

  TEST_CASE("Kerr cross term by direct substitution") {
    const double m = 1.0, a = 0.5, r = 10.0, th = kPi / 2.0;
    const double sigma = r * r + a * a * std::cos(th) * std::cos(th);
    const auto k = at(kerr({m, a}), 0.0, r, th, 0.0);
    CHECK(k[0][3] == doctest::Approx(-2.0 * m * a * r * std::sin(th) * std::sin(th) / sigma).epsilon(1e-14));
    CHECK(k[3][0] == k[0][3]);
    CHECK_THROWS_AS(kerr({m, a})->eval(Vec4<double>{0.0, 1.5, 1.0, 0.0}), DegenerateError);
  }

  TEST_CASE("Kerr is vacuum") {
    PolarDraw draw;
    const auto g = kerr({1.0, 0.7});
    for (int n = 0; n < 20; ++n) CHECK(ricci_residual(*g, {Chart::StaticPolar, draw(4.0, 60.0)}) <= 1e-6);
  }

  TEST_CASE("catalog metrics are symmetric and Lorentzian") {
    PolarDraw draw;
    const std::vector<MetricPtr> ms{minkowski(Chart::StaticPolar), schwarzschild(1.0, Chart::StaticPolar), kerr({1.0, 0.5}),
                                    bondi_metric(biaxial_expansion(0.1, 1.0), 10.0)};
    for (const auto& g : ms) {
      for (int n = 0; n < 10; ++n) {
        const auto x = g->eval(draw(12.0, 80.0));
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) CHECK(x[i][j] == x[j][i]);
        CHECK(det4(x) < 0.0);
      }
    }
  }

  TEST_CASE("Bondi metric leading coefficients") {
    const BondiExpansion e = biaxial_expansion(0.1, 1.0);
    const auto g = bondi_metric(e, 10.0);
    const double u = 0.4, th = 0.9, ps = 1.3;
    // r^2 (1 + 2c / r + O(r^-2)) d theta^2
    for (double r : {1e3, 1e4}) {
      const auto x = at(g, u, r, th, ps);
      CHECK(std::abs((x[2][2] / (r * r) - 1.0) * r - 2.0 * e.c(u, th, ps)) <= 5.0 / r);
      // 2 (l + O(1/r)) du dtheta
      CHECK(std::abs(x[0][2] - e.l(u, th, ps)) <= 5.0 / r);
    }
    const auto s = at(bondi_metric(schwarzschild_expansion(2.0), 5.0), 0.0, 9.0, 1.0, 1.0);
    CHECK(s[0][0] == doctest::Approx(-(1.0 - 4.0 / 9.0)).epsilon(1e-15));
    CHECK_THROWS_AS(g->eval(Vec4<double>{0.0, 9.0, 1.0, 1.0}), DegenerateError);
  }

  TEST_CASE("truncated Bondi metric Ricci residual decays at least like 1/r^2") {
    const auto g = bondi_metric(quadrupole_expansion(0.1, 1.0), 5.0);
    const std::vector<double> radii{50.0, 100.0, 200.0, 400.0};
    std::vector<double> res;
    for (double r : radii) res.push_back(ricci_residual(*g, {Chart::Retarded, {0.5, r, 1.0, 0.3}}));
    CHECK(fit_decay(radii, res).exponent >= 1.8);
  }

  TEST_CASE("default r_min") {
    CHECK(default_r_min(schwarzschild_expansion(1.0), 0.0, 10.0) == doctest::Approx(5.0));
    // sup |c| = 0.1 * 10 on [0, 10]
    CHECK(default_r_min(quadrupole_expansion(0.1, 1.0), 0.0, 10.0) == doctest::Approx(5.0));
    CHECK(default_r_min(quadrupole_expansion(0.5, 1.0), 0.0, 10.0) == doctest::Approx(25.0).epsilon(1e-6));
  }

  TEST_CASE("slice embeddings") {
    const auto hyp = hyperboloid_embedding(Chart::StaticPolar);
    CHECK(hyp->eval(Vec3<double>{1e-9, 1.0, 0.0})[0] == doctest::Approx(1.0).epsilon(1e-15));
    const SliceSpec spec{2.0, {}, {}, 5};
    const auto flat = bondi_slice_embedding(spec, schwarzschild_expansion(1.0));
    for (double r : {0.5, 10.0, 1e3})
      CHECK(flat->eval(Vec3<double>{r, 1.0, 0.5})[0] == doctest::Approx(2.0 + 1.0 / (std::sqrt(1.0 + r * r) + r)).epsilon(1e-15));
    const BondiExpansion unit = BondiExpansion::make(TrigPoly::constant(1.0), {}, {}, {}, TrigPoly::constant(1.0), {}, {});
    const auto corr = bondi_slice_embedding(SliceSpec{}, unit);
    CHECK(corr->eval(Vec3<double>{10.0, 1.0, 0.5})[0] - (std::sqrt(101.0) - 10.0) ==
          doctest::Approx(1.0 / 12000.0).epsilon(1e-9));
    CHECK(corr->eval(Vec3<double>{1e6, 1.0, 0.5})[0] == doctest::Approx(0.0).epsilon(1e-6));
  }

  TEST_CASE("presets are named") {
    const auto names = preset_names();
    CHECK(names.size() == 6);
    CHECK(std::find(names.begin(), names.end(), "bondi-biaxial") != names.end());
  }
}
