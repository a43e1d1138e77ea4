#include "charges/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "charges/adm_charges.hpp"
#include "charges/bondi_radiation.hpp"
#include "charges/errors.hpp"
#include "charges/null_charges.hpp"
#include "charges/spacetimes.hpp"
#include "charges/verify.hpp"

namespace charges {

namespace {

// Constraint margins are sampled on a coarser grid than the charges.
constexpr int kMarginNTheta = 12;
constexpr int kMarginNPsi = 24;
constexpr int kConsistencyNTheta = 16;
constexpr int kConsistencyNPsi = 32;

double tol(const ScenarioConfig& c, double t) { return t * c.tolerance_scale; }

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

double min_of(const std::vector<double>& v) { return v.empty() ? INFINITY : *std::min_element(v.begin(), v.end()); }

InitialData flat_data(const ScenarioConfig& c) {
  MetricPtr metric;
  if (c.preset == "minkowski") {
    metric = minkowski(Chart::StaticPolar);
  } else if (c.preset == "schwarzschild") {
    metric = schwarzschild(c.m, Chart::StaticPolar);
  } else {
    metric = kerr({c.m, c.a});
  }
  return pullback_initial_data(metric, constant_time_slice(Chart3::Cartesian, Chart::StaticPolar),
                               Frame{FrameKind::Euclidean});
}

// Null data: the hyperboloid for Minkowski, the u0 slice for Bondi presets.
InitialData null_data(const ScenarioConfig& c, Json& results) {
  if (c.preset == "minkowski") {
    results["slice"] = "hyperboloid t = sqrt(1 + r^2), retarded chart";
    return pullback_initial_data(minkowski(Chart::Retarded), hyperboloid_embedding(Chart::Retarded),
                                 Frame{FrameKind::Hyperbolic});
  }
  if (!c.is_bondi()) throw UsageError("preset '" + c.preset + "' has no asymptotically null slice");
  const BondiExpansion e = scenario_expansion(c);
  const double r_min = scenario_r_min(c, e);
  results["slice"] = "bondi slice at u0 = " + csv_number(c.slice_u0);
  results["r_min"] = r_min;
  return pulled_back_slice_data(e, scenario_slice(c), r_min);
}

std::vector<Vec3<double>> margin_points(const ScenarioConfig& c, Chart3 chart, double r_floor) {
  std::vector<double> radii;
  for (double r : c.radii)
    if (r >= r_floor) radii.push_back(r);
  if (radii.empty()) return {};
  return sphere_points(radii, build_grid(kMarginNTheta, kMarginNPsi), chart);
}

void add_warnings(ChargeReport& report, const ScenarioConfig& c, const RunOptions& options) {
  report.warnings.insert(report.warnings.end(), c.warnings.begin(), c.warnings.end());
  if (options.strict)
    for (const auto& w : report.warnings) report.add(check_true("strict: " + w, false));
}

void add_condition_b(ChargeReport& report, const ScenarioConfig& c, const BondiExpansion& e) {
  std::vector<double> us;
  for (int k = 0; k <= 4; ++k) us.push_back(c.u0 + (c.u1 - c.u0) * k / 4.0);
  us.push_back(c.slice_u0);
  const ConditionReport b = check_condition_b(e, us);
  report.results["condition_b"] = to_json(b);
  report.add(check_le("Condition B pole integral", b.worst, tol(c, 1e-8), b.detail));
  const ConditionReport a = check_condition_a(e, us, 2.0 * scenario_r_min(c, e));
  report.results["condition_a"] = to_json(a);
  report.add(check_le("Condition A periodicity", a.worst, tol(c, 1e-10), a.detail));
}

std::string samples_csv(const std::vector<double>& radii, const std::vector<std::string>& names,
                        const std::vector<const std::vector<double>*>& columns) {
  std::string out = "r";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out += csv_number(radii[i]);
    for (const auto* col : columns) out += "," + csv_number((*col)[i]);
    out += "\n";
  }
  return out;
}

RunResult run_adm(const ScenarioConfig& c, const RunOptions& options) {
  if (!c.is_flat_slice()) throw UsageError("adm needs a minkowski, schwarzschild or kerr preset");
  RunResult out;
  ChargeReport& rep = out.report;
  const GridPtr grid = build_grid(c.n_theta, c.n_psi);
  const InitialData data = flat_data(c);
  const AdmCharges a = adm_energy_momentum(data, c.radii, grid);
  rep.results["charges"] = to_json(a);
  const double pmt = check_pmt_flat(a);
  rep.results["pmt_margin"] = pmt;

  const auto dec = check_dec_flat(data, margin_points(c, Chart3::Cartesian, 0.0));
  rep.results["dec_min_margin"] = min_of(dec);
  if (c.radii.size() >= 4) {
    const AfDecayReport af = check_af_decay(data, c.radii, build_grid(kMarginNTheta, kMarginNPsi));
    Json j = Json::object();
    for (int q = 0; q < 5; ++q) {
      Json f = to_json(af.fit[q]);
      f["required"] = AfDecayReport::kRequired[q];
      f["ok"] = af.ok[q];
      j[AfDecayReport::kNames[q]] = f;
    }
    rep.results["decay"] = j;
    rep.add(check_true("asymptotic flatness decay orders", af.all_ok));
  } else {
    rep.warnings.push_back("decay orders need at least four radii; skipped");
  }

  rep.add(check_true("energy extrapolation converges", !a.energy.diverging));
  rep.add(check_ge("DEC minimum margin", min_of(dec), -tol(c, 1e-5)));
  rep.add(check_ge("PMT margin E - |P|", pmt, -tol(c, 1e-4)));
  double pmax = 0.0;
  for (int k = 0; k < 3; ++k) pmax = std::max(pmax, std::abs(a.P()[k]));
  rep.add(check_le("max |P_k|", pmax, tol(c, 1e-4)));
  if (c.preset == "minkowski") {
    rep.add(check_le("|E| for flat space", std::abs(a.E()), tol(c, 1e-10)));
  } else {
    const double rel = c.preset == "schwarzschild" ? 1e-3 : 1e-2;
    rep.add(check_le("|E - m| / m", std::abs(a.E() - c.m) / c.m, tol(c, rel)));
  }
  out.csv = samples_csv(a.radii, {"E", "P1", "P2", "P3"},
                        {&a.energy_samples, &a.momentum_samples[0], &a.momentum_samples[1], &a.momentum_samples[2]});
  add_warnings(rep, c, options);
  return out;
}

void add_null_charges(ChargeReport& rep, const ScenarioConfig& c, const InitialData& data, std::string& csv) {
  const GridPtr grid = build_grid(c.n_theta, c.n_psi);
  const NullCharges nc = null_energy_momentum(data, c.radii, grid);
  rep.results["charges"] = to_json(nc);
  const double pmt = check_pmt_null(nc);
  rep.results["pmt_margin"] = pmt;
  const auto dec = check_dec_null(data, margin_points(c, Chart3::Polar, 20.0));
  rep.results["dec_min_margin"] = min_of(dec);
  rep.add(check_ge("decay order tau_hat above gate", nc.tau_exact ? INFINITY : nc.tau_hat, kTauGate));
  rep.add(check_ge("null PMT margin", pmt, -tol(c, 1e-4)));
  rep.add(check_ge("null DEC minimum margin (r >= 20)", min_of(dec), -tol(c, 1e-5)));
  if (c.preset == "minkowski") {
    double mx = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
      mx = std::max(mx, std::abs(nc.energy[nu].limit));
      for (int k = 0; k < 3; ++k) mx = std::max(mx, std::abs(nc.momentum[nu][k].limit));
    }
    rep.add(check_le("max |null charge| of the hyperboloid", mx, tol(c, 1e-12)));
  }
  std::vector<std::string> names;
  std::vector<const std::vector<double>*> cols;
  for (int nu = 0; nu < 4; ++nu) {
    names.push_back("E" + std::to_string(nu));
    cols.push_back(&nc.energy_samples[nu]);
  }
  for (int nu = 0; nu < 4; ++nu)
    for (int k = 0; k < 3; ++k) {
      names.push_back("P" + std::to_string(nu) + std::to_string(k + 1));
      cols.push_back(&nc.momentum_samples[nu][k]);
    }
  csv = samples_csv(nc.radii, names, cols);
}

RunResult run_null(const ScenarioConfig& c, const RunOptions& options) {
  RunResult out;
  const InitialData data = null_data(c, out.report.results);
  add_null_charges(out.report, c, data, out.csv);
  if (c.is_bondi()) add_condition_b(out.report, c, scenario_expansion(c));
  add_warnings(out.report, c, options);
  return out;
}

RunResult run_bondi_evolve(const ScenarioConfig& c, const RunOptions& options) {
  if (!c.is_bondi()) throw UsageError("bondi-evolve needs a bondi-* preset");
  RunResult out;
  ChargeReport& rep = out.report;
  const GridPtr grid = build_grid(c.n_theta, c.n_psi);
  const BondiExpansion e = scenario_expansion(c);
  const std::array<double, 4> m0 = c.m_start ? *c.m_start : bondi_energy_momentum(mass_aspect(e, c.u0, grid));
  const EnergyMomentumTrajectory traj = evolve_energy_momentum(m0, e, c.u0, c.u1, c.du, grid);
  const MassLossMargin mlm = mass_loss_margin(traj);
  const auto& first = traj.samples.front();
  const auto& last = traj.samples.back();
  rep.results["m_start"] = m0;
  rep.results["samples"] = traj.samples.size();
  rep.results["first"] = {{"u", first.u}, {"m", first.m}, {"flux", first.flux}, {"margin", first.margin}};
  rep.results["last"] = {{"u", last.u}, {"m", last.m}, {"flux", last.flux}, {"margin", last.margin}};
  rep.results["max_discrete_dmargin_du"] = mlm.max_discrete;
  rep.results["max_rate"] = mlm.max_rate;
  rep.results["worst_holder"] = mlm.worst_holder;
  double min_f0 = INFINITY;
  for (const auto& s : traj.samples) min_f0 = std::min(min_f0, s.flux[0]);
  rep.results["min_F0"] = min_f0;
  rep.add(check_le("max discrete d/du (m0 - |m|)", mlm.max_discrete, tol(c, 1e-9)));
  rep.add(check_le("max instantaneous rate", mlm.max_rate, tol(c, 1e-12)));
  rep.add(check_le("max (sqrt(sum F_i^2) - F0)", mlm.worst_holder, tol(c, 1e-15)));
  rep.add(check_ge("min F0", min_f0, 0.0));
  add_condition_b(rep, c, e);
  out.csv = traj.to_csv();
  add_warnings(rep, c, options);
  return out;
}

RunResult run_bondi_slice(const ScenarioConfig& c, const RunOptions& options) {
  if (!c.is_bondi()) throw UsageError("bondi-slice needs a bondi-* preset");
  RunResult out;
  ChargeReport& rep = out.report;
  const BondiExpansion e = scenario_expansion(c);
  const SliceSpec spec = scenario_slice(c);
  const double r_min = scenario_r_min(c, e);
  const ConsistencyReport cons =
      expansion_consistency(e, spec, c.consistency_radii, build_grid(kConsistencyNTheta, kConsistencyNPsi), r_min);
  rep.results["r_min"] = r_min;
  rep.results["consistency"] = to_json(cons);
  std::string failing;
  for (const auto& f : cons.failing) failing += (failing.empty() ? "" : ", ") + f;
  rep.add(check_ge("expansion consistency exponent", cons.min_exponent, kConsistencyExponent,
                   failing.empty() ? "" : "failing: " + failing));

  // Closed-form induced data at one probe point per radius, for plotting.
  const InitialData closed = induced_slice_data(e, spec);
  Json probe = Json::array();
  for (double r : c.radii) {
    const PointData pd = closed({r, 1.0, 0.5});
    Json row{{"r", r}};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        row["g" + std::to_string(i + 1) + std::to_string(j + 1)] = pd.g[i][j].v.v;
        row["h" + std::to_string(i + 1) + std::to_string(j + 1)] = pd.p[i][j].v;
      }
    probe.push_back(row);
  }
  rep.results["induced_probe"] = probe;
  rep.results["slice"] = "bondi slice at u0 = " + csv_number(c.slice_u0);
  add_null_charges(rep, c, pulled_back_slice_data(e, spec, r_min), out.csv);
  add_condition_b(rep, c, e);
  add_warnings(rep, c, options);
  return out;
}

RunResult run_verify(const ScenarioConfig& c, const RunOptions& options) {
  RunResult out;
  VerifyOptions vo;
  vo.tolerance_scale = c.tolerance_scale;
  vo.seed = c.seed;
  vo.n_theta = c.n_theta;
  vo.n_psi = c.n_psi;
  const auto results = run_verify_suite(vo);
  Json groups = Json::array();
  std::size_t total = 0, passed = 0;
  for (const auto& r : results) {
    groups.push_back(to_json(r));
    for (const auto& ch : r.checks) {
      Check named = ch;
      named.name = r.id + ": " + ch.name;
      out.report.add(named);
      ++total;
      passed += ch.pass ? 1 : 0;
    }
  }
  out.report.results["criteria"] = groups;
  out.report.results["summary"] = {{"checks", total}, {"passed", passed}};
  add_warnings(out.report, c, options);
  return out;
}

// Value tracked by the refinement study.
struct Probe {
  double value = 0.0;
  double residual = 0.0;
  double error_estimate = 0.0;
};

Probe probe_value(const ScenarioConfig& c, const InitialData& data, const std::vector<double>& radii,
                  const GridPtr& grid) {
  if (c.is_flat_slice()) {
    const AdmCharges a = adm_energy_momentum(data, radii, grid);
    return {a.energy.limit, a.energy.residual, a.energy.error_estimate};
  }
  const NullCharges nc = null_energy_momentum(data, radii, grid);
  return {nc.combination[0].limit, nc.combination[0].residual, nc.combination[0].error_estimate};
}

RunResult run_converge(const ScenarioConfig& c, const RunOptions& options) {
  RunResult out;
  ChargeReport& rep = out.report;
  Json unused = Json::object();
  const InitialData data = c.is_flat_slice() ? flat_data(c) : null_data(c, unused);
  rep.results["quantity"] = c.is_flat_slice() ? "E" : "E0 - P01";
  out.csv = "study,n_theta,n_psi,radius_scale,value,residual,error_estimate\n";
  Json rows = Json::array();
  auto record = [&](const std::string& study, int nt, int np, double scale) {
    std::vector<double> radii;
    for (double r : c.radii) radii.push_back(r * scale);
    const Probe p = probe_value(c, data, radii, build_grid(nt, np));
    rows.push_back({{"study", study}, {"n_theta", nt}, {"n_psi", np}, {"radius_scale", scale},
                    {"value", p.value}, {"residual", p.residual}, {"error_estimate", p.error_estimate}});
    out.csv += study + "," + std::to_string(nt) + "," + std::to_string(np) + "," + csv_number(scale) + "," +
               csv_number(p.value) + "," + csv_number(p.residual) + "," + csv_number(p.error_estimate) + "\n";
    return p;
  };
  const int nt = c.n_theta, np = c.n_psi;
  const Probe g1 = record("grid", std::max(2, nt / 2), std::max(4, (np / 4) * 2), 1.0);
  const Probe g2 = record("grid", nt, np, 1.0);
  const Probe g3 = record("grid", 2 * nt, 2 * np, 1.0);
  const Probe l2 = record("ladder", nt, np, 2.0);
  const Probe l4 = record("ladder", nt, np, 4.0);
  rep.results["table"] = rows;
  const double dg_fine = std::abs(g3.value - g2.value);
  const double dl1 = std::abs(l2.value - g2.value);
  const double dl2 = std::abs(l4.value - l2.value);
  rep.results["grid_differences"] = {std::abs(g2.value - g1.value), dg_fine};
  rep.results["ladder_differences"] = {dl1, dl2};
  rep.add(check_le("grid refinement change", dg_fine, tol(c, 1e-8)));
  rep.add(check_le("ladder refinement contraction", dl2, dl1 + tol(c, 1e-12),
                   "successive changes under doubling every radius"));
  add_warnings(rep, c, options);
  return out;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"adm", "null", "bondi-evolve", "bondi-slice", "verify", "converge"};
  return names;
}

Json config_to_json(const ScenarioConfig& c) {
  Json j;
  j["preset"] = c.preset;
  j["parameters"] = {{"m", c.m}, {"a", c.a}, {"amplitude", c.amplitude}};
  if (c.news_zero) j["parameters"]["news_zero"] = *c.news_zero;
  j["grid"] = {{"ntheta", c.n_theta}, {"npsi", c.n_psi}};
  j["radii"] = c.radii;
  j["evolution"] = {{"u0", c.u0}, {"u1", c.u1}, {"du", c.du}};
  if (c.m_start) j["evolution"]["m_start"] = *c.m_start;
  j["slice"] = {{"u0", c.slice_u0}, {"consistency_radii", c.consistency_radii}};
  if (c.r_min) j["slice"]["r_min"] = *c.r_min;
  j["tolerance_scale"] = c.tolerance_scale;
  j["seed"] = c.seed;
  Json fields = Json::object();
  for (const auto& [name, poly] : c.fields) fields[name] = poly.to_string();
  j["fields"] = fields;
  j["defaulted"] = c.defaulted;
  return j;
}

RunResult run_subcommand(const std::string& sub, const ScenarioConfig& c, const RunOptions& options) {
  validate_config(c);
  RunResult out;
  if (sub == "adm") {
    out = run_adm(c, options);
  } else if (sub == "null") {
    out = run_null(c, options);
  } else if (sub == "bondi-evolve") {
    out = run_bondi_evolve(c, options);
  } else if (sub == "bondi-slice") {
    out = run_bondi_slice(c, options);
  } else if (sub == "verify") {
    out = run_verify(c, options);
  } else if (sub == "converge") {
    out = run_converge(c, options);
  } else {
    throw UsageError("unknown subcommand '" + sub + "'");
  }
  out.report.subcommand = sub;
  out.report.scenario = sub == "verify" ? "property suite" : c.preset;
  out.report.config = config_to_json(c);
  return out;
}

}  // namespace charges
