#include <string>

#include <doctest.h>

#include "charges/config.hpp"
#include "charges/errors.hpp"
#include "charges/runner.hpp"

using namespace charges;

namespace {

ScenarioConfig small(const std::string& preset) {
  ScenarioConfig c = default_config(preset);
  c.n_theta = 16;
  c.n_psi = 32;
  return c;
}

bool every_flag_recomputes(const Json& report) {
  for (const auto& c : report["checks"])
    if (c.contains("value") &&
        holds(c["value"].get<double>(), c["relation"].get<std::string>(), c["threshold"].get<double>()) !=
            c["pass"].get<bool>())
      return false;
  return true;
}

}  // namespace

TEST_SUITE("cli_runner") {
  TEST_CASE("adm on Schwarzschild reports the mass") {
    const RunResult r = run_subcommand("adm", small("schwarzschild"));
    const Json j = r.report.to_json();
    CHECK(r.report.pass());
    CHECK(j["results"]["charges"]["energy"]["limit"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(j["results"]["pmt_margin"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(j["config"]["preset"] == "schwarzschild");
    CHECK(r.csv.rfind("r,E,P1,P2,P3\n", 0) == 0);
    CHECK(every_flag_recomputes(j));
  }

  TEST_CASE("bondi-evolve without news is constant") {
    const RunResult r = run_subcommand("bondi-evolve", small("bondi-schwarzschild"));
    const Json j = r.report.to_json();
    CHECK(r.report.pass());
    CHECK(j["results"]["max_discrete_dmargin_du"].get<double>() == 0.0);
    CHECK(j["results"]["first"]["m"] == j["results"]["last"]["m"]);
    CHECK(every_flag_recomputes(j));
  }

  TEST_CASE("null on the Minkowski hyperboloid") {
    const RunResult r = run_subcommand("null", small("minkowski"));
    CHECK(r.report.pass());
    CHECK(every_flag_recomputes(r.report.to_json()));
  }

  TEST_CASE("bondi-slice on the quadrupole preset") {
    const RunResult r = run_subcommand("bondi-slice", small("bondi-quadrupole"));
    CHECK(r.report.pass());
    CHECK(every_flag_recomputes(r.report.to_json()));
  }

  TEST_CASE("slice at nonzero news fails the decay gate honestly") {
    ScenarioConfig c = small("bondi-biaxial");
    c.slice_u0 = 0.0;
    const RunResult r = run_subcommand("null", c);
    CHECK_FALSE(r.report.pass());
    const auto failing = r.report.failing();
    CHECK(std::any_of(failing.begin(), failing.end(), [](const std::string& s) { return s.find("tau") != s.npos; }));
  }

  TEST_CASE("strict mode turns warnings into failing checks") {
    ScenarioConfig c = parse_config("preset = bondi-quadrupole\n[grid]\nntheta = 16\nnpsi = 32\n[field.c]\nmode = 2 0 cos 0 0.1\n");
    REQUIRE(c.warnings.size() == 1);
    const ChargeReport lax = run_subcommand("bondi-evolve", c).report;
    CHECK(lax.failing() == std::vector<std::string>{"Condition B pole integral"});
    CHECK(lax.warnings == c.warnings);
    RunOptions strict;
    strict.strict = true;
    const ChargeReport tight = run_subcommand("bondi-evolve", c, strict).report;
    CHECK(tight.failing().size() == 2);
    CHECK(tight.failing().back().rfind("strict: Condition B", 0) == 0);
  }

  TEST_CASE("reports are deterministic") {
    const ScenarioConfig c = small("kerr");
    const std::string a = run_subcommand("adm", c).report.deterministic_json().dump();
    const std::string b = run_subcommand("adm", c).report.deterministic_json().dump();
    CHECK(a == b);
  }

  TEST_CASE("usage errors") {
    CHECK_THROWS_AS(run_subcommand("teleport", small("schwarzschild")), UsageError);
    CHECK_THROWS_AS(run_subcommand("adm", small("bondi-quadrupole")), UsageError);
    CHECK_THROWS_AS(run_subcommand("bondi-evolve", small("kerr")), UsageError);
    CHECK(subcommand_names().size() == 6);
  }
}
