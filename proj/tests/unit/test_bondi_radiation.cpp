#include <cmath>
#include <numbers>

#include <doctest.h>

#include "charges/bondi_radiation.hpp"
#include "charges/spacetimes.hpp"

using namespace charges;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const SphereField& f, auto&& exact) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    m = std::max(m, std::abs(f[k] - exact(f.grid()->theta_of(k), f.grid()->psi_of(k))));
  return m;
}

const auto kZero = [](double, double) { return 0.0; };

}  // namespace

TEST_SUITE("bondi_radiation") {
  TEST_CASE("derived fields of c = sin^2 theta") {
    const auto grid = build_grid(16, 32);
    const BondiExpansion e = BondiExpansion::make(TrigPoly::term(1.0, 0, 2, 0), {}, {}, {}, TrigPoly::constant(1.0), {}, {});
    const DerivedFields f = derived_fields(e, 0.0, grid);
    CHECK(max_abs_diff(f.l, [](double th, double) { return 4.0 * std::sin(th) * std::cos(th); }) <= 1e-14);
    CHECK(max_abs_diff(f.lbar, kZero) == 0.0);
  }

  TEST_CASE("derived fields vanish without news and aspects") {
    const auto grid = build_grid(8, 16);
    const DerivedFields f = derived_fields(schwarzschild_expansion(1.0), 3.0, grid);
    CHECK(max_abs_diff(f.p, kZero) == 0.0);
    CHECK(max_abs_diff(f.pbar, kZero) == 0.0);
  }

  TEST_CASE("Bondi energy-momentum of a dipolar mass aspect") {
    const auto grid = build_grid(16, 32);
    const double m = 1.7;
    const auto M = sample(grid, [&](double th, double) { return m * (1.0 + 0.5 * std::cos(th)); });
    const auto mv = bondi_energy_momentum(M);
    CHECK(std::abs(mv[0] - m) <= 1e-10);
    CHECK(std::abs(mv[1]) <= 1e-10);
    CHECK(std::abs(mv[2]) <= 1e-10);
    CHECK(std::abs(mv[3] - m / 6.0) <= 1e-10);
  }

  TEST_CASE("quadrupole news flux and mass loss") {
    const auto grid = build_grid(16, 32);
    const BondiExpansion e = quadrupole_expansion(0.1, 1.0);
    for (double u : {0.0, 3.0, 9.5}) CHECK(std::abs(news_flux(e, u, grid)[0] - 8.0 * 0.01 / 15.0) <= 1e-10);
    const auto traj = evolve_energy_momentum({1.0, 0.0, 0.0, 0.0}, e, 0.0, 10.0, 0.01, grid);
    CHECK(traj.samples.size() == 1001);
    CHECK(std::abs(traj.samples.back().m[0] - (1.0 - 8.0 * 0.01 / 15.0 * 10.0)) <= 1e-8);
    const MassLossMargin mlm = mass_loss_margin(traj);
    CHECK(mlm.max_discrete <= 1e-9);
    CHECK(mlm.worst_holder <= 1e-15);
  }

  TEST_CASE("zero news leaves the energy-momentum constant") {
    const auto grid = build_grid(8, 16);
    const auto traj = evolve_energy_momentum({1.0, 0.1, 0.0, 0.2}, schwarzschild_expansion(1.0), 0.0, 2.0, 0.1, grid);
    for (const auto& s : traj.samples) {
      CHECK(s.m[0] == 1.0);
      CHECK(s.m[3] == 0.2);
      CHECK(s.dmargin_du == 0.0);
    }
  }

  TEST_CASE("backward evolution returns ascending samples") {
    const auto grid = build_grid(8, 16);
    const BondiExpansion e = quadrupole_expansion(0.1, 1.0);
    const auto back = evolve_energy_momentum({2.0, 0.0, 0.0, 0.0}, e, 5.0, 0.0, 0.05, grid);
    CHECK(back.samples.front().u == doctest::Approx(0.0));
    CHECK(back.samples.back().u == doctest::Approx(5.0));
    CHECK(back.samples.back().m[0] == 2.0);
    CHECK(back.samples.front().m[0] == doctest::Approx(2.0 + 8.0 * 0.01 / 15.0 * 5.0).epsilon(1e-12));
    const std::string csv = back.to_csv();
    CHECK(csv.rfind("u,m0,m1,m2,m3,F0,F1,F2,F3,margin,dmargin_du\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(back.samples.size()) + 1);
  }

  TEST_CASE("Conditions A and B") {
    const std::vector<double> us{0.0, 1.0, 2.0};
    const BondiExpansion biax = biaxial_expansion(0.1, 1.0);
    CHECK(check_condition_a(biax, us, 20.0).holds);
    CHECK(check_condition_b(biax, us).holds);
    const BondiExpansion zonal =
        BondiExpansion::make(TrigPoly::harmonic(2, 0, Harmonic::Cos, {0.0, 0.1}), {}, {}, {}, TrigPoly::constant(1.0), {}, {});
    const ConditionReport b = check_condition_b(zonal, us);
    CHECK_FALSE(b.holds);
    CHECK(b.worst == doctest::Approx(2.0 * kPi * 0.2).epsilon(1e-8));
    CHECK_FALSE(b.detail.empty());
  }

  TEST_CASE("closed-form slice data reduces to the hyperboloid") {
    const InitialData d = induced_slice_data(BondiExpansion{}, SliceSpec{});
    const PointData p = d({12.0, 1.0, 2.0});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(value_of(p.g[i][j]) == (i == j ? 1.0 : 0.0));
        CHECK(value_of(p.p[i][j]) == (i == j ? 1.0 : 0.0));
      }
  }

  TEST_CASE("closed-form slice data of Schwarzschild-Bondi") {
    const double m = 1.4, r = 30.0;
    const InitialData d = induced_slice_data(schwarzschild_expansion(m), SliceSpec{});
    const PointData p = d({r, 1.0, 2.0});
    CHECK(value_of(p.g[0][0]) - 1.0 == doctest::Approx(m / (2.0 * r * r * r)).epsilon(1e-12));
  }

  TEST_CASE("leading angular deviation of the slice is 2c/r") {
    const BondiExpansion e = quadrupole_expansion(0.1, 1.0, -1.0);
    const InitialData d = induced_slice_data(e, SliceSpec{});
    const double r = 1e4, th = 0.8;
    const double c = e.c(0.0, th, 0.0);
    CHECK(std::abs((value_of(d({r, th, 0.0}).g[1][1]) - 1.0) * r - 2.0 * c) <= 1e-3);
  }

  TEST_CASE("pullback agrees with the closed-form expansion") {
    const auto grid = build_grid(8, 16);
    const std::vector<double> radii{50.0, 100.0, 200.0, 400.0, 800.0};
    const ConsistencyReport rep = expansion_consistency(quadrupole_expansion(0.1, 1.0), SliceSpec{}, radii, grid, 10.0);
    CHECK(rep.consistent);
    CHECK(rep.min_exponent >= kConsistencyExponent);
    CHECK(rep.failing.empty());
  }
}
