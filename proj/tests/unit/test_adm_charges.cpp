#include <cmath>
#include <numbers>

#include <doctest.h>

#include "charges/adm_charges.hpp"
#include "charges/errors.hpp"
#include "charges/extrapolation.hpp"
#include "charges/spacetimes.hpp"

using namespace charges;

namespace {

const std::vector<double> kLadder{10.0, 20.0, 40.0, 80.0};

InitialData static_slice(MetricPtr g) {
  return pullback_initial_data(std::move(g), constant_time_slice(Chart3::Cartesian, Chart::StaticPolar), Frame{});
}

}  // namespace

TEST_SUITE("adm_charges") {
  TEST_CASE("Schwarzschild total mass") {
    const auto grid = build_grid(24, 48);
    const AdmCharges a = adm_energy_momentum(static_slice(schwarzschild(1.0, Chart::StaticPolar)), kLadder, grid);
    CHECK(std::abs(a.E() - 1.0) <= 1e-3);
    for (double p : a.P()) CHECK(std::abs(p) <= 1e-6);
    CHECK(a.energy_samples.size() == kLadder.size());
    CHECK_FALSE(a.energy.diverging);
    CHECK(check_pmt_flat(a) == doctest::Approx(a.E()).epsilon(1e-6));
  }

  TEST_CASE("Minkowski has zero charges") {
    const auto grid = build_grid(16, 32);
    const auto data = pullback_initial_data(minkowski(Chart::Cartesian),
                                            constant_time_slice(Chart3::Cartesian, Chart::Cartesian), Frame{});
    const AdmCharges a = adm_energy_momentum(data, kLadder, grid);
    CHECK(std::abs(a.E()) <= 1e-12);
    CHECK(check_pmt_flat(0.0, {0.0, 0.0, 0.0}) == 0.0);
  }

  TEST_CASE("Kerr total mass and momentum") {
    const auto grid = build_grid(24, 48);
    const AdmCharges a = adm_energy_momentum(static_slice(kerr({1.0, 0.5})), kLadder, grid);
    CHECK(std::abs(a.E() - 1.0) <= 1e-2);
    for (double p : a.P()) CHECK(std::abs(p) <= 1e-4);
  }

  TEST_CASE("Bowen-York momentum is recovered and rotates") {
    const auto grid = build_grid(24, 48);
    const InitialData by = bowen_york_test_data(1.0, {0.2, -0.1, 0.3});
    const AdmCharges a = adm_energy_momentum(by, kLadder, grid);
    CHECK(a.P()[0] == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(a.P()[1] == doctest::Approx(-0.1).epsilon(1e-6));
    CHECK(a.P()[2] == doctest::Approx(0.3).epsilon(1e-6));
    // quarter turn about z: (x, y) -> (-y, x)
    const Mat3<double> rz{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
    const AdmCharges b = adm_energy_momentum(rotate_initial_data(by, rz), kLadder, grid);
    CHECK(b.P()[0] == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(b.P()[1] == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(b.E() == doctest::Approx(a.E()).epsilon(1e-9));
  }

  TEST_CASE("positive mass margin arithmetic") {
    CHECK(check_pmt_flat(2.0, {1.0, 0.0, 0.0}) == 1.0);
    CHECK(check_pmt_flat(5.0, {0.0, 3.0, 4.0}) == 0.0);
  }

  TEST_CASE("vacuum slices satisfy DEC with zero margin") {
    const auto grid = build_grid(6, 12);
    const auto pts = sphere_points(std::vector<double>{10.0, 40.0}, grid, Chart3::Cartesian);
    CHECK(pts.size() == 2 * grid->size());
    for (double m : check_dec_flat(static_slice(schwarzschild(1.0, Chart::StaticPolar)), pts))
      CHECK(std::abs(m) <= 1e-7);
    for (double m : check_dec_flat(static_slice(kerr({1.0, 0.5})), pts)) CHECK(std::abs(m) <= 1e-5);
  }

  TEST_CASE("asymptotic flatness decay") {
    const auto grid = build_grid(8, 16);
    const std::vector<double> radii{20.0, 40.0, 80.0, 160.0};
    const auto s = check_af_decay(static_slice(schwarzschild(1.0, Chart::StaticPolar)), radii, grid);
    CHECK(s.all_ok);
    CHECK(s.fit[0].exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(s.fit[1].exponent == doctest::Approx(2.0).epsilon(0.05));
    CHECK(s.fit[2].exponent == doctest::Approx(3.0).epsilon(0.05));
    CHECK(s.fit[3].exact_zero);
    const auto k = check_af_decay(static_slice(kerr({1.0, 0.5})), radii, grid);
    CHECK(k.fit[3].exponent >= 2.0);
    CHECK_THROWS_AS(check_af_decay(static_slice(kerr({1.0, 0.5})), std::vector<double>{10.0, 20.0, 40.0}, grid),
                    ConfigError);
  }
}

TEST_SUITE("extrapolation") {
  TEST_CASE("exact model is recovered") {
    const std::vector<double> r{10.0, 20.0, 40.0, 80.0};
    std::vector<double> v;
    for (double x : r) v.push_back(1.5 - 2.0 / x + 3.0 / (x * x));
    const LimitFit f = extrapolate_limit(r, v);
    CHECK(f.limit == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.residual <= 1e-12);
    CHECK_FALSE(f.diverging);
  }

  TEST_CASE("linear growth is flagged as diverging") {
    const std::vector<double> r{10.0, 20.0, 40.0, 80.0};
    std::vector<double> v;
    for (double x : r) v.push_back(0.01 * x);
    CHECK(extrapolate_limit(r, v).diverging);
  }

  TEST_CASE("decay fits") {
    const std::vector<double> r{10.0, 20.0, 40.0, 80.0};
    std::vector<double> v, z(4, 0.0);
    for (double x : r) v.push_back(7.0 * std::pow(x, -2.5));
    CHECK(fit_decay(r, v).exponent == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit_decay(r, z).exact_zero);
  }

  TEST_CASE("ladders") {
    CHECK(parse_ladder("10, 20,40") == std::vector<double>{10.0, 20.0, 40.0});
    CHECK_THROWS_AS(parse_ladder("80,40"), ConfigError);
    CHECK_THROWS_AS(parse_ladder("10,10,20"), ConfigError);
    CHECK_THROWS_AS(parse_ladder("-1,2,3"), ConfigError);
    CHECK_THROWS_AS(parse_ladder("10,x"), ConfigError);
    CHECK_THROWS_AS(validate_ladder(std::vector<double>{10.0, 20.0}, 3), ConfigError);
  }
}
