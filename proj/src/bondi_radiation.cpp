#include "charges/bondi_radiation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace charges {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const SphereField& f, const char* what) {
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!std::isfinite(f[k]))
      throw DegenerateError(std::string("pole regularity violated: non-finite ") + what + " at a grid node");
}

SphereField sample_poly(const TrigPoly& poly, double u, const GridPtr& grid) {
  return sample(grid, [&](double th, double ps) { return poly(u, th, ps); });
}

}  // namespace

DerivedFields derived_fields(const BondiExpansion& e, double u, const GridPtr& grid) {
  DerivedFields f{sample_poly(e.l, u, grid), sample_poly(e.lbar, u, grid), sample_poly(e.p, u, grid),
                  sample_poly(e.pbar, u, grid)};
  require_finite(f.l, "l");
  require_finite(f.lbar, "lbar");
  require_finite(f.p, "p");
  require_finite(f.pbar, "pbar");
  return f;
}

DerivedFields derived_fields_sampled(const BondiExpansion& e, double u, const GridPtr& grid) {
  const SphereField c = sample_poly(e.c, u, grid);
  const SphereField d = sample_poly(e.d, u, grid);
  const SphereField N = sample_poly(e.N, u, grid);
  const SphereField P = sample_poly(e.P, u, grid);
  const SphereField c2 = angular_derivative(c, Axis::Theta);
  const SphereField c3 = angular_derivative(c, Axis::Psi);
  const SphereField d2 = angular_derivative(d, Axis::Theta);
  const SphereField d3 = angular_derivative(d, Axis::Psi);
  const SphereField cot = sample(grid, [](double th, double) { return std::cos(th) / std::sin(th); });
  const SphereField csc = sample(grid, [](double th, double) { return 1.0 / std::sin(th); });
  DerivedFields f{c2 + 2.0 * c * cot + d3 * csc, d2 + 2.0 * d * cot - c3 * csc,
                  2.0 * N + 3.0 * (c * c2 + d * d2) + 4.0 * (c * c + d * d) * cot - 2.0 * (c3 * d - c * d3) * csc,
                  2.0 * P + 2.0 * (c2 * d - c * d2) + 3.0 * (c * c3 + d * d3) * csc};
  require_finite(f.l, "l");
  require_finite(f.lbar, "lbar");
  require_finite(f.p, "p");
  require_finite(f.pbar, "pbar");
  return f;
}

SphereField mass_aspect(const BondiExpansion& e, double u, const GridPtr& grid) { return sample_poly(e.M, u, grid); }

std::array<double, 4> bondi_energy_momentum(const SphereField& M) { return multipoles(M); }

std::array<double, 4> news_flux(const BondiExpansion& e, double u, const GridPtr& grid) {
  const TrigPoly cu = e.c.d_u();
  const TrigPoly du = e.d.d_u();
  const SphereField f = sample(grid, [&](double th, double ps) {
    const double a = cu(u, th, ps);
    const double b = du(u, th, ps);
    return a * a + b * b;
  });
  return multipoles(f);
}

namespace {

double norm3(const std::array<double, 4>& v) { return std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }

}  // namespace

EnergyMomentumTrajectory evolve_energy_momentum(const std::array<double, 4>& m_start, const BondiExpansion& e,
                                                double u_start, double u_end, double du, const GridPtr& grid) {
  if (!(du > 0.0)) throw ConfigError("u step must be positive");
  if (!(u_end != u_start) || !std::isfinite(u_end - u_start)) throw ConfigError("empty u range");
  const double span = std::abs(u_end - u_start);
  const double dir = u_end > u_start ? 1.0 : -1.0;
  auto steps = static_cast<long>(std::floor(span / du + 1e-9));
  const double remainder = span - steps * du;
  std::vector<double> us{u_start};
  for (long k = 1; k <= steps; ++k) us.push_back(u_start + dir * du * k);
  if (remainder > 1e-9 * du) us.push_back(u_end);
  us.back() = u_end;

  std::vector<TrajectorySample> samples(us.size());
  std::array<double, 4> m = m_start;
  std::array<double, 4> f_prev = news_flux(e, us[0], grid);
  samples[0].u = us[0];
  samples[0].m = m;
  samples[0].flux = f_prev;
  for (std::size_t k = 1; k < us.size(); ++k) {
    const double h = us[k] - us[k - 1];
    const auto f_mid = news_flux(e, us[k - 1] + 0.5 * h, grid);
    const auto f_next = news_flux(e, us[k], grid);
    for (int nu = 0; nu < 4; ++nu) m[nu] -= h / 6.0 * (f_prev[nu] + 4.0 * f_mid[nu] + f_next[nu]);
    samples[k].u = us[k];
    samples[k].m = m;
    samples[k].flux = f_next;
    f_prev = f_next;
  }
  if (dir < 0) std::reverse(samples.begin(), samples.end());
  for (auto& s : samples) {
    const double mag = norm3(s.m);
    s.margin = s.m[0] - mag;
    double proj = 0.0;
    if (mag > 0.0)
      for (int i = 1; i < 4; ++i) proj += s.m[i] * s.flux[i] / mag;
    s.rate = -s.flux[0] + proj;
  }
  const std::size_t n = samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k + 1 < n ? k : k - 1;
    samples[k].dmargin_du = (samples[a + 1].margin - samples[a].margin) / (samples[a + 1].u - samples[a].u);
  }
  return EnergyMomentumTrajectory{std::move(samples)};
}

std::string EnergyMomentumTrajectory::to_csv() const {
  std::string out = "u,m0,m1,m2,m3,F0,F1,F2,F3,margin,dmargin_du\n";
  char buf[64];
  for (const auto& s : samples) {
    const double row[] = {s.u,       s.m[0],    s.m[1],    s.m[2],   s.m[3],      s.flux[0],
                          s.flux[1], s.flux[2], s.flux[3], s.margin, s.dmargin_du};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      std::snprintf(buf, sizeof buf, "%.17e", row[i]);
      out += buf;
      out += i + 1 < std::size(row) ? ',' : '\n';
    }
  }
  return out;
}

MassLossMargin mass_loss_margin(const EnergyMomentumTrajectory& traj) {
  if (traj.samples.size() < 2) throw UsageError("mass-loss margin needs at least two samples");
  MassLossMargin m;
  m.max_discrete = -INFINITY;
  m.max_rate = -INFINITY;
  m.worst_holder = -INFINITY;
  for (const auto& s : traj.samples) {
    m.max_discrete = std::max(m.max_discrete, s.dmargin_du);
    m.max_rate = std::max(m.max_rate, s.rate);
    m.worst_holder = std::max(m.worst_holder, norm3(s.flux) - s.flux[0]);
  }
  return m;
}

ConditionReport check_condition_a(const BondiExpansion& e, std::span<const double> u_samples, double r,
                                  double tolerance) {
  ConditionReport rep;
  const double thetas[] = {0.3, 1.1, 2.0, 2.9};
  for (double u : u_samples) {
    for (double th : thetas) {
      auto eval = [&](double psi) {
        const Vec4<double> x{u, r, th, psi};
        Vec4<D44> v;
        for (int a = 0; a < 4; ++a) v[a] = make_variable<D44>(x[a], a);
        return bondi_functions(e, v[0], v[1], v[2], v[3]);
      };
      const auto f0 = eval(0.0);
      const auto f1 = eval(2.0 * kPi);
      const D44* a[] = {&f0.beta, &f0.gamma, &f0.delta, &f0.U, &f0.V, &f0.W};
      const D44* b[] = {&f1.beta, &f1.gamma, &f1.delta, &f1.U, &f1.V, &f1.W};
      for (int q = 0; q < 6; ++q) {
        double diff = std::abs(a[q]->v.v - b[q]->v.v);
        for (int i = 0; i < 4; ++i) {
          diff = std::max(diff, std::abs(a[q]->d[i].v - b[q]->d[i].v));
          for (int j = 0; j < 4; ++j) diff = std::max(diff, std::abs(a[q]->d[i].d[j] - b[q]->d[i].d[j]));
        }
        rep.worst = std::max(rep.worst, diff);
      }
    }
  }
  rep.holds = rep.worst <= tolerance;
  rep.detail = rep.holds ? "periodic in psi" : "metric functions differ between psi = 0 and psi = 2 pi";
  return rep;
}

namespace {

// Polynomial extrapolation of (x_k, y_k) to x = 0 (Neville).
double extrapolate_to_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
  return y[0];
}

}  // namespace

ConditionReport check_condition_b(const BondiExpansion& e, std::span<const double> u_samples, double tolerance) {
  ConditionReport rep;
  const int n_psi = std::max(64, 4 * e.c.max_m() + 4);
  const double eps = 1e-3;
  for (double u : u_samples) {
    for (double pole : {0.0, kPi}) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (int k = 1; k <= 4; ++k) {
        const double off = k * eps;
        const double th = pole == 0.0 ? off : kPi - off;
        double s = 0.0;
        for (int j = 0; j < n_psi; ++j) s += e.c(u, th, 2.0 * kPi * j / n_psi);
        xs.push_back(off);
        ys.push_back(s * 2.0 * kPi / n_psi);
      }
      const double limit = std::abs(extrapolate_to_zero(xs, ys));
      if (limit > rep.worst) {
        rep.worst = limit;
        std::ostringstream os;
        os << "integral of c over psi at theta = " << (pole == 0.0 ? "0" : "pi") << ", u = " << u << " is "
           << limit;
        rep.detail = os.str();
      }
    }
  }
  rep.holds = rep.worst <= tolerance;
  if (rep.holds) rep.detail = "pole integrals vanish";
  return rep;
}

namespace {

// Sign of the cross term (-c d_psi + c_psi d) csc in the h(e1, e2) bracket.
constexpr double kH12CrossSign = 1.0;

struct SliceFields {
  TrigPoly c, d, c0, d0, c00, d00, c2, c3, d2, d3, d22, d33;
  TrigPoly l, l0, lbar, lbar0, l2, lbar3;
  TrigPoly M, N, P, C, H, a3;

  std::vector<const TrigPoly*> all() const {
    return {&c, &d, &c0, &d0, &c00, &d00, &c2, &c3, &d2, &d3, &d22, &d33, &l,
            &l0, &lbar, &lbar0, &l2, &lbar3, &M, &N, &P, &C, &H, &a3};
  }
};

SliceFields slice_fields(const BondiExpansion& e, const SliceSpec& spec) {
  const double u0 = spec.u0;
  SliceFields f;
  f.c = e.c.at_u(u0);
  f.d = e.d.at_u(u0);
  f.c0 = e.c.d_u().at_u(u0);
  f.d0 = e.d.d_u().at_u(u0);
  f.c00 = e.c.d_u().d_u().at_u(u0);
  f.d00 = e.d.d_u().d_u().at_u(u0);
  f.c2 = f.c.d_theta();
  f.c3 = f.c.d_psi();
  f.d2 = f.d.d_theta();
  f.d3 = f.d.d_psi();
  f.d22 = f.d2.d_theta();
  f.d33 = f.d3.d_psi();
  f.l = e.l.at_u(u0);
  f.l0 = e.l.d_u().at_u(u0);
  f.lbar = e.lbar.at_u(u0);
  f.lbar0 = e.lbar.d_u().at_u(u0);
  f.l2 = f.l.d_theta();
  f.lbar3 = f.lbar.d_psi();
  f.M = e.M.at_u(u0);
  f.N = e.N.at_u(u0);
  f.P = e.P.at_u(u0);
  f.C = e.C.at_u(u0);
  f.H = e.H.at_u(u0);
  f.a3 = spec.a3;
  return f;
}

// g11 g12 g13 g22 g23 g33 h11 h12 h13 h22 h23 h33
template <class T>
std::array<T, 12> induced_components(const SliceFields& f, const T& r, const T& theta, const T& psi) {
  using std::cos;
  using std::sin;
  const TrigBasis<T> basis(T(0.0), theta, psi, f.all());
  auto ev = [&](const TrigPoly& p) { return p.eval(basis); };
  const T c = ev(f.c), d = ev(f.d), c0 = ev(f.c0), d0 = ev(f.d0), c00 = ev(f.c00), d00 = ev(f.d00);
  const T c2 = ev(f.c2), c3 = ev(f.c3), d2 = ev(f.d2), d3 = ev(f.d3), d22 = ev(f.d22), d33 = ev(f.d33);
  const T l = ev(f.l), l0 = ev(f.l0), lb = ev(f.lbar), lb0 = ev(f.lbar0), l2 = ev(f.l2), lb3 = ev(f.lbar3);
  const T M = ev(f.M), N = ev(f.N), P = ev(f.P), C = ev(f.C), H = ev(f.H), a3 = ev(f.a3);
  const T csc = T(1.0) / sin(theta);
  const T cot = cos(theta) * csc;
  const T ir = T(1.0) / r;
  const T ir2 = ir * ir;
  const T ir3 = ir2 * ir;
  const T k2 = c * c + d * d;
  const T cc0 = c * c0 + d * d0;
  std::array<T, 12> g;
  g[0] = 1.0 + (a3 * 16.0 + M - cc0) * ir3 * 0.5;
  g[1] = -l * ir2 * 0.5 + (N * 12.0 - l0 * 3.0 + (c * c2 + d * d2) * 4.0) * ir3 / 12.0;
  g[2] = -lb * ir2 * 0.5 + (P * 12.0 - lb0 * 3.0 + csc * (c * c3 + d * d3) * 4.0) * ir3 / 12.0;
  g[3] = 1.0 + c * 2.0 * ir + (k2 * 2.0 + c0) * ir2 + (c * k2 + C * 2.0 + cc0 * 2.0 + c00 * 0.25) * ir3;
  g[4] = d * 2.0 * ir + d0 * ir2 + (d * k2 + H * 2.0 + d00 * 0.25) * ir3;
  g[5] = 1.0 - c * 2.0 * ir + (k2 * 2.0 - c0) * ir2 + (-c * k2 - C * 2.0 + cc0 * 2.0 - c00 * 0.25) * ir3;
  g[6] = 1.0 + k2 * ir2 + (a3 * 16.0 - M) * ir3;
  g[7] = l * ir2 * 0.5 + (l0 * 0.5 - k2 * cot * 2.0 - N * 4.0 + (-c * d3 + c3 * d) * csc * kH12CrossSign -
                          (c * c2 + d * d2) * (13.0 / 3.0)) *
                             ir3 * 0.5;
  g[8] = lb * ir2 * 0.5 +
         (lb0 * 0.5 + c * d2 - c2 * d - P * 4.0 - (c * c3 + d * d3) * csc * (13.0 / 3.0)) * ir3 * 0.5;
  g[9] = 1.0 + c * ir + c0 * ir2 +
         (M * 3.0 - a3 * 16.0 - C * 4.0 - l2 * 2.0 - c * k2 * 2.0 + cc0 * 5.0 + c00 * 1.5) * ir3 * 0.25;
  g[10] = d * ir + d0 * ir2 +
          (-d * k2 * 2.0 + d * cot * cot * 2.0 + d * csc * csc * 2.0 - c3 * cot * csc * 4.0 - d33 * csc * csc -
           d2 * cot - d22 - H * 4.0 + d00 * 1.5) *
              ir3 * 0.25;
  g[11] = 1.0 - c * ir - c0 * ir2 +
          (M * 3.0 - a3 * 16.0 + C * 4.0 + c * k2 * 2.0 + cc0 * 5.0 - c00 * 1.5 - l * cot * 2.0 -
           lb3 * csc * 2.0) *
              ir3 * 0.25;
  return g;
}

constexpr std::array<std::array<int, 2>, 6> kPairs = {{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

}  // namespace

InitialData induced_slice_data(const BondiExpansion& e, const SliceSpec& spec) {
  auto fields = std::make_shared<const SliceFields>(slice_fields(e, spec));
  const Frame frame{FrameKind::Hyperbolic};
  return InitialData(
      frame, true,
      [fields, frame](const Vec3<double>& y) {
        const Vec3<Jet2> x = seed_chart_point(y);
        const auto comp = induced_components(*fields, x[0], x[1], x[2]);
        PointData pd;
        pd.y = y;
        pd.frame = frame_jets(frame, y);
        for (int k = 0; k < 6; ++k) {
          const auto [i, j] = kPairs[k];
          pd.g[i][j] = pd.g[j][i] = comp[k];
          pd.p[i][j] = pd.p[j][i] = comp[6 + k].v;
        }
        return pd;
      },
      "bondi-slice closed form");
}

InitialData pulled_back_slice_data(const BondiExpansion& e, const SliceSpec& spec, double r_min) {
  return pullback_initial_data(bondi_metric(e, r_min), bondi_slice_embedding(spec, e), Frame{FrameKind::Hyperbolic});
}

ConsistencyReport expansion_consistency(const BondiExpansion& e, const SliceSpec& spec,
                                        std::span<const double> radii, const GridPtr& grid, double r_min) {
  validate_ladder(radii, 2);
  if (radii.front() < r_min) throw ConfigError("consistency ladder starts below r_min");
  const InitialData numeric = pulled_back_slice_data(e, spec, r_min);
  const InitialData closed = induced_slice_data(e, spec);
  ConsistencyReport rep;
  rep.components.resize(12);
  for (int k = 0; k < 12; ++k) rep.components[k].name = kInducedComponentNames[k];
  for (double r : radii) {
    std::vector<std::array<double, 12>> diff(grid->size());
    parallel_for(grid->size(), [&](std::size_t n) {
      const Vec3<double> y{r, grid->theta_of(n), grid->psi_of(n)};
      const PointData a = numeric(y);
      const PointData b = closed(y);
      for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kPairs[k];
        diff[n][k] = std::abs(a.g[i][j].v.v - b.g[i][j].v.v);
        diff[n][6 + k] = std::abs(a.p[i][j].v - b.p[i][j].v);
      }
    });
    for (int k = 0; k < 12; ++k) {
      double s = 0.0;
      for (const auto& row : diff) s = std::max(s, row[k]);
      rep.components[k].sup_difference.push_back(s);
    }
  }
  rep.consistent = true;
  rep.min_exponent = INFINITY;
  for (auto& c : rep.components) {
    c.fit = fit_decay(radii, c.sup_difference);
    c.consistent = c.fit.exact_zero || c.fit.exponent >= kConsistencyExponent;
    if (!c.fit.exact_zero) rep.min_exponent = std::min(rep.min_exponent, c.fit.exponent);
    if (!c.consistent) {
      rep.consistent = false;
      rep.failing.push_back(c.name);
    }
  }
  return rep;
}

NewsFreeSliceReport news_free_slice_scenario(const BondiExpansion& e, const std::array<double, 4>& m_final, double u0,
                                   double u_lo, double du, const GridPtr& grid, std::span<const double> radii,
                                   const SliceSpec& spec, double r_min) {
  if (!(u_lo < u0)) throw ConfigError("news-free slice scenario needs u_lo < u0");
  NewsFreeSliceReport rep;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const double th = grid->theta_of(k);
    const double ps = grid->psi_of(k);
    rep.max_news_at_u0 = std::max({rep.max_news_at_u0, std::abs(e.c(u0, th, ps)), std::abs(e.d(u0, th, ps))});
  }
  rep.precondition = rep.max_news_at_u0 <= 1e-10;
  if (!rep.precondition) {
    std::ostringstream os;
    os << "news does not vanish at u0 = " << u0 << " (max |c|, |d| = " << rep.max_news_at_u0 << ")";
    throw ConfigError(os.str());
  }
  rep.trajectory = evolve_energy_momentum(m_final, e, u0, u_lo, du, grid);
  rep.min_gap = INFINITY;
  for (const auto& s : rep.trajectory.samples) rep.min_gap = std::min(rep.min_gap, s.margin);
  rep.inequality_holds = rep.min_gap >= -1e-12;

  SliceSpec slice = spec;
  slice.u0 = u0;
  const InitialData data = pulled_back_slice_data(e, slice, r_min);
  rep.slice_charges = null_energy_momentum(data, radii, grid);
  rep.pmt_null_margin = check_pmt_null(rep.slice_charges);
  rep.e0_minus_p01 = rep.slice_charges.combination[0].limit;
  const double r = radii.back();
  for (double th : {0.4, 1.2, 2.1, 2.8})
    for (double ps : {0.0, 1.7, 3.9}) {
      const RigidityResidual rr = rigidity_residual(data({r, th, ps}));
      rep.worst_rigidity.gauss = std::max(rep.worst_rigidity.gauss, rr.gauss);
      rep.worst_rigidity.codazzi = std::max(rep.worst_rigidity.codazzi, rr.codazzi);
      rep.worst_rigidity.antisymmetry = std::max(rep.worst_rigidity.antisymmetry, rr.antisymmetry);
    }
  return rep;
}

}  // namespace charges
