#include <cmath>
#include <limits>

#include <doctest.h>

#include "charges/report.hpp"

using namespace charges;

TEST_SUITE("report") {
  TEST_CASE("relations") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(holds(1.0, "<=", 1.0));
    CHECK_FALSE(holds(1.1, "<=", 1.0));
    CHECK(holds(2.0, ">=", 1.0));
    CHECK_FALSE(holds(nan, "<=", 1.0));
    CHECK_FALSE(holds(nan, ">=", 1.0));
    CHECK_FALSE(check_le("x", nan, 1.0).pass);
    CHECK(check_true("flag", true).pass);
    CHECK_FALSE(check_true("flag", false).pass);
  }

  TEST_CASE("pass flags are recomputable from the serialized numbers") {
    ChargeReport r;
    r.subcommand = "adm";
    r.scenario = "test";
    r.add(check_le("a", 0.5, 1.0));
    r.add(check_ge("b", -2.0, 0.0));
    r.add(check_true("c", true, "detail text"));
    const Json j = r.to_json();
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["pass"] == false);
    for (const auto& c : j["checks"])
      CHECK(holds(c["value"].get<double>(), c["relation"].get<std::string>(), c["threshold"].get<double>()) ==
            c["pass"].get<bool>());
    CHECK(r.failing() == std::vector<std::string>{"b"});
  }

  TEST_CASE("timing values live only in metadata") {
    ChargeReport r;
    r.add(check_runtime("runtime [s]", 0.25, 10.0));
    const Json d = r.deterministic_json();
    CHECK_FALSE(d["checks"][0].contains("value"));
    CHECK_FALSE(d.contains("metadata"));
    const Json j = r.to_json();
    CHECK(j["metadata"]["timings"]["runtime [s]"] == 0.25);
    CHECK(r.pass());
  }

  TEST_CASE("an empty report does not pass") {
    ChargeReport r;
    CHECK_FALSE(r.pass());
  }

  TEST_CASE("limit fits serialize their residuals") {
    LimitFit f;
    f.limit = 1.0;
    f.residual = 1e-9;
    f.error_estimate = 2e-9;
    const Json j = to_json(f);
    CHECK(j["limit"] == 1.0);
    CHECK(j["residual"] == 1e-9);
    CHECK(j["error_estimate"] == 2e-9);
  }
}
