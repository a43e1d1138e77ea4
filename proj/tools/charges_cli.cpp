// charges: energy-momentum charges at spatial and null infinity.
//
//   charges <subcommand> [--config FILE | --preset NAME] [overrides] [--out FILE] [--csv FILE]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 configuration or usage
// error, 3 evaluation error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "charges/config.hpp"
#include "charges/errors.hpp"
#include "charges/extrapolation.hpp"
#include "charges/parallel.hpp"
#include "charges/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw charges::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw charges::UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw charges::UsageError("failed writing '" + path + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-momentum charges at spatial and null infinity"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset, out_path, csv_path, radii_text;
  std::optional<int> ntheta, npsi;
  std::optional<double> u0, u1, du, scale;
  bool strict = false;
  app.add_option("--config", config_path, "Scenario configuration file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "Preset name when no config file is given");
  app.add_option("--out", out_path, "Write the JSON report here (default: stdout)");
  app.add_option("--csv", csv_path, "Write the subcommand's table here");
  app.add_option("--ntheta", ntheta, "Gauss-Legendre nodes in cos(theta)");
  app.add_option("--npsi", npsi, "Uniform nodes in psi (even)");
  app.add_option("--radii", radii_text, "Radius ladder a,b,c,...");
  app.add_option("--u0", u0, "Evolution start (retarded time)");
  app.add_option("--u1", u1, "Evolution end (retarded time)");
  app.add_option("--du", du, "Evolution step");
  app.add_flag("--strict", strict, "Treat warnings as failing checks");
  app.add_option("--tolerance-scale", scale, "Multiply accuracy tolerances");

  for (const auto& name : charges::subcommand_names()) app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  charges::RunResult result;
  try {
    charges::ScenarioConfig cfg;
    if (!config_path.empty()) {
      if (!preset.empty()) throw charges::ConfigError("--preset and --config are exclusive");
      cfg = charges::parse_config(read_file(config_path));
    } else {
      cfg = charges::default_config(preset.empty() ? (sub == "verify" ? "minkowski" : "schwarzschild") : preset);
    }
    if (ntheta) cfg.n_theta = *ntheta;
    if (npsi) cfg.n_psi = *npsi;
    if (!radii_text.empty()) cfg.radii = charges::parse_ladder(radii_text);
    if (u0) cfg.u0 = *u0;
    if (u1) cfg.u1 = *u1;
    if (du) cfg.du = *du;
    if (scale) cfg.tolerance_scale = *scale;
    charges::validate_config(cfg);
    for (const auto& d : cfg.defaulted) std::cerr << "default: " << d << "\n";
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

    charges::RunOptions options;
    options.strict = strict;
    result = charges::run_subcommand(sub, cfg, options);
  } catch (const charges::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const charges::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  auto& rep = result.report;
  rep.metadata["timestamp_utc"] = utc_timestamp();
  rep.metadata["elapsed_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.metadata["threads"] = charges::thread_cap();

  try {
    const std::string json = rep.to_json().dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << json;
    } else {
      write_file(out_path, json);
    }
    if (!csv_path.empty()) {
      if (result.csv.empty()) throw charges::UsageError(sub + " produces no table for --csv");
      write_file(csv_path, result.csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  }

  std::size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.pass ? 1 : 0;
  std::cerr << sub << " [" << rep.scenario << "]: " << passed << "/" << rep.checks.size() << " checks passed\n";
  for (const auto& c : rep.checks)
    if (!c.pass) std::cerr << "FAILED " << c.name << ": " << c.value << " " << c.relation << " " << c.threshold << "\n";
  return rep.pass() ? 0 : 1;
}
