#include "charges/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "charges/errors.hpp"
#include "charges/extrapolation.hpp"

namespace charges {

namespace {

const std::set<std::string> kFieldNames = {"c", "d", "C", "H", "M", "N", "P", "a3"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw ConfigError(what + ": expected a finite number, got '" + t + "'");
  return v;
}

long to_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size()) throw ConfigError(what + ": expected an integer, got '" + t + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, const std::string& separators) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (separators.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

// Parses "<name>^<k>" or "<name>" (k = 1); returns false when the token has another name.
bool power_token(const std::string& token, const std::string& name, int& power) {
  if (token == name) {
    power = 1;
    return true;
  }
  if (token.rfind(name + "^", 0) != 0) return false;
  power = static_cast<int>(to_int(token.substr(name.size() + 1), "exponent in '" + token + "'"));
  return true;
}

bool harmonic_token(const std::string& token, int& m, Harmonic& kind) {
  for (const auto& [prefix, k] : {std::pair{std::string("cos("), Harmonic::Cos}, {std::string("sin("), Harmonic::Sin}}) {
    if (token.rfind(prefix, 0) != 0 || token.back() != ')') continue;
    std::string inner = token.substr(prefix.size(), token.size() - prefix.size() - 1);
    if (inner.size() < 3 || inner.substr(inner.size() - 3) != "psi") return false;
    inner = inner.substr(0, inner.size() - 3);
    m = inner.empty() ? 1 : static_cast<int>(to_int(inner, "harmonic order in '" + token + "'"));
    kind = k;
    return true;
  }
  return false;
}

struct Entry {
  std::string value;
  int line = 0;
};

// section -> key -> entries (repeatable keys keep every occurrence)
using Document = std::map<std::string, std::map<std::string, std::vector<Entry>>>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"preset"}},
      {"parameters", {"m", "a", "amplitude", "news_zero"}},
      {"grid", {"ntheta", "npsi"}},
      {"ladder", {"radii"}},
      {"evolution", {"u0", "u1", "du", "m_start"}},
      {"slice", {"u0", "r_min", "consistency_radii"}},
      {"tolerances", {"scale"}},
      {"run", {"seed"}},
  };
  return keys;
}

bool is_field_section(const std::string& section) {
  return section.rfind("field.", 0) == 0 && kFieldNames.count(section.substr(6)) > 0;
}

Document read_document(const std::string& text) {
  Document doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto where = [&](int n) { return "line " + std::to_string(n); };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where(line_no) + ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section) && !is_field_section(section))
        throw ConfigError(where(line_no) + ": unknown section [" + section + "]");
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where(line_no) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (is_field_section(section)) {
      if (key != "term" && key != "mode")
        throw ConfigError(where(line_no) + ": unknown key '" + qualified + "' (expected term or mode)");
    } else if (!known_keys().at(section).count(key)) {
      throw ConfigError(where(line_no) + ": unknown key '" + qualified + "'");
    } else if (doc[section].count(key)) {
      throw ConfigError(where(line_no) + ": duplicate key '" + qualified + "'");
    }
    if (value.empty()) throw ConfigError(where(line_no) + ": empty value for '" + qualified + "'");
    doc[section][key].push_back({value, line_no});
  }
  return doc;
}

double default_news_zero(const std::string& preset) { return preset == "bondi-biaxial" ? 1.0 : 0.0; }

}  // namespace

bool ScenarioConfig::is_bondi() const { return preset.rfind("bondi-", 0) == 0; }

bool ScenarioConfig::is_flat_slice() const { return preset == "minkowski" || preset == "schwarzschild" || preset == "kerr"; }

TrigPoly parse_term(const std::string& text) {
  const auto tokens = split(text, " \t*");
  if (tokens.empty()) throw ConfigError("term: empty");
  const double coef = to_double(tokens[0], "term coefficient");
  int u_pow = 0, sin_pow = 0, cos_pow = 0, m = 0;
  Harmonic kind = Harmonic::Cos;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    int p = 0;
    std::string factor;
    if (harmonic_token(t, m, kind)) {
      factor = "harmonic";
    } else if (power_token(t, "u", p)) {
      factor = "u";
      u_pow = p;
    } else if (power_token(t, "sin", p)) {
      factor = "sin";
      sin_pow = p;
    } else if (power_token(t, "cos", p)) {
      factor = "cos";
      cos_pow = p;
    } else {
      throw ConfigError("term: unrecognized factor '" + t + "'");
    }
    if (!seen.insert(factor).second) throw ConfigError("term: factor '" + factor + "' given twice");
  }
  if (u_pow < 0 || cos_pow < 0 || m < 0) throw ConfigError("term: u and cos powers and harmonic order must be >= 0");
  return TrigPoly::term(coef, u_pow, sin_pow, cos_pow, m, kind);
}

TrigPoly parse_mode(const std::string& text) {
  const auto tokens = split(text, " \t,");
  if (tokens.size() < 4) throw ConfigError("mode: expected '<l> <m> <cos|sin> <coef> ...'");
  const int l = static_cast<int>(to_int(tokens[0], "mode degree l"));
  const int m = static_cast<int>(to_int(tokens[1], "mode order m"));
  Harmonic kind;
  if (tokens[2] == "cos") {
    kind = Harmonic::Cos;
  } else if (tokens[2] == "sin") {
    kind = Harmonic::Sin;
  } else {
    throw ConfigError("mode: kind must be cos or sin, got '" + tokens[2] + "'");
  }
  if (kind == Harmonic::Sin && m == 0) throw ConfigError("mode: sin with m = 0 vanishes identically");
  std::vector<double> coefs;
  for (std::size_t i = 3; i < tokens.size(); ++i) coefs.push_back(to_double(tokens[i], "mode coefficient"));
  return TrigPoly::harmonic(l, m, kind, coefs);
}

void validate_config(const ScenarioConfig& c) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), c.preset) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("preset: unknown preset '" + c.preset + "' (known: " + list + ")");
  }
  if (!(c.m > 0.0)) throw ConfigError("parameters.m: must be positive");
  if (c.preset == "kerr" && !(std::abs(c.a) < c.m)) throw ConfigError("parameters.a: need |a| < m");
  if (c.n_theta < 2) throw ConfigError("grid.ntheta: must be >= 2");
  if (c.n_psi < 4 || c.n_psi % 2 != 0) throw ConfigError("grid.npsi: must be even and >= 4");
  try {
    validate_ladder(c.radii, 3);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("ladder.radii: ") + e.what());
  }
  try {
    validate_ladder(c.consistency_radii, 3);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("slice.consistency_radii: ") + e.what());
  }
  if (!(c.du > 0.0)) throw ConfigError("evolution.du: must be positive");
  if (c.u1 == c.u0) throw ConfigError("evolution: u1 must differ from u0");
  if (!(c.tolerance_scale > 0.0)) throw ConfigError("tolerances.scale: must be positive");
  if (c.r_min && !(*c.r_min > 0.0)) throw ConfigError("slice.r_min: must be positive");
  if (!c.fields.empty() && !c.is_bondi()) throw ConfigError("field sections apply only to bondi-* presets");
}

ScenarioConfig default_config(const std::string& preset) { return parse_config("preset = " + preset + "\n"); }

ScenarioConfig parse_config(const std::string& text) {
  const Document doc = read_document(text);
  ScenarioConfig c;
  auto get = [&](const std::string& section, const std::string& key) -> const Entry* {
    auto s = doc.find(section);
    if (s == doc.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second.front();
  };
  auto qualified = [](const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
  };
  // Wraps value errors with the line and key they came from.
  auto with_line = [&](const std::string& section, const std::string& key, const std::function<void(const std::string&)>& apply,
                       const std::string& default_text) {
    if (const Entry* e = get(section, key)) {
      try {
        apply(e->value);
      } catch (const ConfigError& err) {
        throw ConfigError("line " + std::to_string(e->line) + ": " + qualified(section, key) + ": " + err.what());
      }
    } else if (!default_text.empty()) {
      c.defaulted.push_back(qualified(section, key) + " = " + default_text);
    }
  };

  with_line("", "preset", [&](const std::string& v) { c.preset = v; }, c.preset);
  with_line("parameters", "m", [&](const std::string& v) { c.m = to_double(v, "value"); }, format_double(c.m));
  with_line("parameters", "a", [&](const std::string& v) { c.a = to_double(v, "value"); },
            c.preset == "kerr" ? format_double(c.a) : "");
  with_line("parameters", "amplitude", [&](const std::string& v) { c.amplitude = to_double(v, "value"); },
            c.preset == "bondi-quadrupole" || c.preset == "bondi-biaxial" ? format_double(c.amplitude) : "");
  if (c.is_bondi()) c.news_zero = default_news_zero(c.preset);
  with_line("parameters", "news_zero", [&](const std::string& v) { c.news_zero = to_double(v, "value"); },
            c.preset == "bondi-quadrupole" || c.preset == "bondi-biaxial" ? format_double(*c.news_zero) : "");
  with_line("grid", "ntheta", [&](const std::string& v) { c.n_theta = static_cast<int>(to_int(v, "value")); },
            std::to_string(c.n_theta));
  with_line("grid", "npsi", [&](const std::string& v) { c.n_psi = static_cast<int>(to_int(v, "value")); },
            std::to_string(c.n_psi));
  with_line("ladder", "radii", [&](const std::string& v) { c.radii = parse_ladder(v); }, format_list(c.radii));
  with_line("evolution", "u0", [&](const std::string& v) { c.u0 = to_double(v, "value"); }, format_double(c.u0));
  with_line("evolution", "u1", [&](const std::string& v) { c.u1 = to_double(v, "value"); }, format_double(c.u1));
  with_line("evolution", "du", [&](const std::string& v) { c.du = to_double(v, "value"); }, format_double(c.du));
  with_line("evolution", "m_start",
            [&](const std::string& v) {
              const auto parts = split(v, " ,\t");
              if (parts.size() != 4) throw ConfigError("expected four components");
              std::array<double, 4> m{};
              for (int i = 0; i < 4; ++i) m[i] = to_double(parts[i], "component");
              c.m_start = m;
            },
            c.is_bondi() ? "Bondi energy-momentum of the mass aspect at evolution.u0" : "");
  if (c.is_bondi()) c.slice_u0 = *c.news_zero;  // asymptotically null data needs c = d = 0 on the slice
  with_line("slice", "u0", [&](const std::string& v) { c.slice_u0 = to_double(v, "value"); },
            c.is_bondi() ? format_double(c.slice_u0) : "");
  with_line("slice", "r_min", [&](const std::string& v) { c.r_min = to_double(v, "value"); },
            c.is_bondi() ? "5 max(1, sup|c|, sup|d|)" : "");
  with_line("slice", "consistency_radii", [&](const std::string& v) { c.consistency_radii = parse_ladder(v); },
            c.is_bondi() ? format_list(c.consistency_radii) : "");
  with_line("tolerances", "scale", [&](const std::string& v) { c.tolerance_scale = to_double(v, "value"); },
            format_double(c.tolerance_scale));
  with_line("run", "seed",
            [&](const std::string& v) {
              const long s = to_int(v, "value");
              if (s < 0) throw ConfigError("must be non-negative");
              c.seed = static_cast<std::uint64_t>(s);
            },
            std::to_string(c.seed));

  for (const auto& [section, keys] : doc) {
    if (!is_field_section(section)) continue;
    const std::string name = section.substr(6);
    TrigPoly poly;
    for (const auto& [key, entries] : keys) {
      for (const Entry& e : entries) {
        try {
          poly += key == "term" ? parse_term(e.value) : parse_mode(e.value);
        } catch (const Error& err) {
          throw ConfigError("line " + std::to_string(e.line) + ": " + section + "." + key + ": " + err.what());
        }
      }
    }
    c.fields[name] = poly;
  }

  validate_config(c);

  if (c.fields.count("c")) {
    std::vector<double> us;
    for (int k = 0; k <= 4; ++k) us.push_back(c.u0 + (c.u1 - c.u0) * k / 4.0);
    us.push_back(c.slice_u0);
    c.condition_b = check_condition_b(scenario_expansion(c), us);
    if (!c.condition_b->holds) c.warnings.push_back("Condition B fails: " + c.condition_b->detail);
  }
  return c;
}

BondiExpansion scenario_expansion(const ScenarioConfig& c) {
  if (!c.is_bondi()) throw UsageError("preset '" + c.preset + "' has no Bondi expansion");
  const double u_n = c.news_zero.value_or(default_news_zero(c.preset));
  BondiExpansion e;
  if (c.preset == "bondi-schwarzschild") {
    e = schwarzschild_expansion(c.m);
  } else if (c.preset == "bondi-quadrupole") {
    e = quadrupole_expansion(c.amplitude, c.m, u_n);
  } else {
    e = biaxial_expansion(c.amplitude, c.m, u_n);
  }
  const std::map<std::string, TrigPoly*> slots = {{"c", &e.c}, {"d", &e.d}, {"C", &e.C}, {"H", &e.H},
                                                   {"M", &e.M}, {"N", &e.N}, {"P", &e.P}};
  for (const auto& [name, poly] : c.fields) {
    auto it = slots.find(name);
    if (it != slots.end()) *it->second = poly;
  }
  e.derive();
  return e;
}

SliceSpec scenario_slice(const ScenarioConfig& c) {
  SliceSpec s;
  s.u0 = c.slice_u0;
  if (auto it = c.fields.find("a3"); it != c.fields.end()) s.a3 = it->second;
  return s;
}

double scenario_r_min(const ScenarioConfig& c, const BondiExpansion& e) {
  if (c.r_min) return *c.r_min;
  return default_r_min(e, c.slice_u0, c.slice_u0);
}

}  // namespace charges
