#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <doctest.h>

#include "charges/config.hpp"
#include "charges/errors.hpp"

using namespace charges;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config applies and logs defaults") {
    const ScenarioConfig c = parse_config("preset = schwarzschild\n");
    CHECK(c.preset == "schwarzschild");
    CHECK(c.m == 1.0);
    CHECK(c.n_theta == kDefaultNTheta);
    CHECK(c.radii == std::vector<double>{10.0, 20.0, 40.0, 80.0});
    CHECK(c.seed == 20240601u);
    const auto& d = c.defaulted;
    CHECK(std::any_of(d.begin(), d.end(), [](const std::string& s) { return contains(s, "grid.ntheta = 48"); }));
    CHECK(std::any_of(d.begin(), d.end(), [](const std::string& s) { return contains(s, "ladder.radii"); }));
    CHECK(c.warnings.empty());
  }

  TEST_CASE("explicit values override defaults and are not logged") {
    const ScenarioConfig c = parse_config(
        "preset = kerr\n"
        "[parameters]\n"
        "m = 2\n"
        "a = 0.5   # comment\n"
        "[ladder]\n"
        "radii = 20, 40, 80\n");
    CHECK(c.m == 2.0);
    CHECK(c.a == 0.5);
    CHECK(c.radii.size() == 3);
    CHECK(std::none_of(c.defaulted.begin(), c.defaulted.end(),
                       [](const std::string& s) { return contains(s, "parameters.m"); }));
  }

  TEST_CASE("malformed input names the line") {
    CHECK(contains(error_of("preset = schwarzschild\n[ladder]\nradii = 80,40\n"), "line 3"));
    CHECK(contains(error_of("preset = schwarzschild\n[grid]\nntheta = 16\nnphi = 32\n"), "line 4"));
    CHECK(contains(error_of("preset = schwarzschild\n[gird]\n"), "line 2"));
    CHECK(contains(error_of("preset = schwarzschild\nno equals sign\n"), "line 2"));
    CHECK(contains(error_of("preset = schwarzschild\n[grid]\nntheta = many\n"), "line 3"));
    CHECK_FALSE(error_of("preset = warp-drive\n").empty());
    CHECK_FALSE(error_of("preset = kerr\n[parameters]\na = 1.5\n").empty());
    CHECK_FALSE(error_of("preset = schwarzschild\n[tolerances]\nscale = 0\n").empty());
    CHECK_FALSE(error_of("preset = schwarzschild\n[field.c]\nterm = 1 sin^2\n").empty());
    CHECK_FALSE(error_of("preset = bondi-quadrupole\n[field.q]\nterm = 1\n").empty());
  }

  TEST_CASE("zonal quadrupole news violates Condition B") {
    const ScenarioConfig c = parse_config(
        "preset = bondi-quadrupole\n"
        "[evolution]\n"
        "u0 = 0\n"
        "u1 = 2\n"
        "[field.c]\n"
        "mode = 2 0 cos 0 0.1\n");
    REQUIRE(c.condition_b.has_value());
    CHECK_FALSE(c.condition_b->holds);
    CHECK(c.condition_b->worst == doctest::Approx(2.0 * std::numbers::pi * 0.2).epsilon(1e-8));
    REQUIRE(c.warnings.size() == 1);
    CHECK(contains(c.warnings.front(), "Condition B"));
  }

  TEST_CASE("sin^2 theta news satisfies Condition B") {
    const ScenarioConfig c = parse_config("preset = bondi-quadrupole\n[field.c]\nterm = 0.1 u^1 sin^2\n");
    REQUIRE(c.condition_b.has_value());
    CHECK(c.condition_b->holds);
    CHECK(c.warnings.empty());
  }

  TEST_CASE("term and mode syntax") {
    const TrigPoly t = parse_term("0.5 u^2 sin^3 cos^1 sin(2psi)");
    CHECK(t(2.0, 0.7, 0.3) ==
          doctest::Approx(0.5 * 4.0 * std::pow(std::sin(0.7), 3) * std::cos(0.7) * std::sin(0.6)).epsilon(1e-14));
    CHECK(parse_term("3")(1.0, 1.0, 1.0) == 3.0);
    CHECK_THROWS_AS(parse_term("0.5 tan^2"), ConfigError);
    CHECK_THROWS_AS(parse_term(""), ConfigError);
    // unnormalized P_2^0 = (3 cos^2 - 1) / 2
    const TrigPoly m = parse_mode("2 0 cos 1 2");
    CHECK(m(0.5, 0.3, 0.0) == doctest::Approx(2.0 * 0.5 * (3.0 * std::pow(std::cos(0.3), 2) - 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(parse_mode("2 3 cos 1"), ConfigError);
    CHECK_THROWS_AS(parse_mode("2 1 tan 1"), ConfigError);
  }

  TEST_CASE("preset slice defaults to the news zero") {
    const ScenarioConfig c = default_config("bondi-biaxial");
    REQUIRE(c.news_zero.has_value());
    CHECK(c.slice_u0 == *c.news_zero);
    const BondiExpansion e = scenario_expansion(c);
    for (double th : {0.3, 1.2, 2.9})
      for (double ps : {0.0, 1.0, 4.0}) {
        CHECK(e.c(c.slice_u0, th, ps) == doctest::Approx(0.0).scale(1.0));
        CHECK(e.d(c.slice_u0, th, ps) == doctest::Approx(0.0).scale(1.0));
      }
  }

  TEST_CASE("field overrides replace preset coefficients") {
    const ScenarioConfig c = parse_config("preset = bondi-schwarzschild\n[field.M]\nterm = 1\nterm = 0.5 cos^1\n");
    const BondiExpansion e = scenario_expansion(c);
    CHECK(e.M(0.0, 0.4, 0.0) == doctest::Approx(1.0 + 0.5 * std::cos(0.4)));
    CHECK_THROWS_AS(scenario_expansion(default_config("kerr")), UsageError);
  }

  TEST_CASE("r_min defaults from the slice") {
    const ScenarioConfig c = default_config("bondi-biaxial");
    CHECK(scenario_r_min(c, scenario_expansion(c)) == doctest::Approx(5.0));
    const ScenarioConfig d = parse_config("preset = bondi-biaxial\n[slice]\nr_min = 12\n");
    CHECK(scenario_r_min(d, scenario_expansion(d)) == 12.0);
  }

  TEST_CASE("validation after overrides") {
    ScenarioConfig c = default_config("schwarzschild");
    CHECK_NOTHROW(validate_config(c));
    c.n_psi = 7;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = default_config("schwarzschild");
    c.du = -1.0;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
  }
}
