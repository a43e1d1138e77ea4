#include "charges/extrapolation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "charges/errors.hpp"

namespace charges {

namespace {

Eigen::VectorXd fit_inverse_powers(std::span<const double> radii, std::span<const double> values,
                                   std::size_t first) {
  const Eigen::Index n = static_cast<Eigen::Index>(radii.size() - first);
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ir = 1.0 / radii[first + k];
    a(k, 0) = 1.0;
    a(k, 1) = ir;
    a(k, 2) = ir * ir;
    b(k) = values[first + k];
  }
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

void validate_ladder(std::span<const double> radii, std::size_t min_rungs) {
  if (radii.size() < min_rungs)
    throw ConfigError("radius ladder needs at least " + std::to_string(min_rungs) + " rungs");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || !std::isfinite(radii[k])) throw ConfigError("radii must be positive and finite");
    if (k > 0 && !(radii[k] > radii[k - 1])) throw ConfigError("radius ladder must be strictly increasing");
  }
}

LimitFit extrapolate_limit(std::span<const double> radii, std::span<const double> values) {
  validate_ladder(radii, 3);
  if (values.size() != radii.size()) throw UsageError("ladder and sample counts differ");
  const Eigen::VectorXd x = fit_inverse_powers(radii, values, 0);
  LimitFit fit;
  fit.limit = x(0);
  fit.coefficients = {x(0), x(1), x(2)};
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double ir = 1.0 / radii[k];
    fit.residual = std::max(fit.residual, std::abs(x(0) + x(1) * ir + x(2) * ir * ir - values[k]));
  }
  if (radii.size() >= 4) {
    fit.error_estimate = std::abs(fit_inverse_powers(radii, values, 1)(0) - fit.limit);
  } else {
    const double ir = 1.0 / radii.back();
    fit.error_estimate = std::abs(x(2) * ir * ir);
  }
  const std::size_t n = values.size();
  const double first = std::abs(values[1] - values[0]);
  const double last = std::abs(values[n - 1] - values[n - 2]);
  const double scale = std::max({1.0, std::abs(values[0]), std::abs(values[n - 1])});
  fit.diverging = last > first + 1e-12 * scale;
  return fit;
}

DecayFit fit_decay(std::span<const double> radii, std::span<const double> values, double floor) {
  if (values.size() != radii.size()) throw UsageError("ladder and sample counts differ");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double v = std::abs(values[k]);
    if (v >= floor) {
      lx.push_back(std::log(radii[k]));
      ly.push_back(std::log(v));
    }
  }
  DecayFit fit;
  if (lx.size() < 2) {
    fit.exact_zero = lx.empty();
    fit.exponent = lx.empty() ? INFINITY : 0.0;
    return fit;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.exponent = -slope;
  for (std::size_t k = 0; k < lx.size(); ++k)
    fit.residual = std::max(fit.residual, std::abs(my + slope * (lx[k] - mx) - ly[k]));
  return fit;
}

std::string DecayFit::describe() const {
  if (exact_zero) return "exact";
  std::ostringstream os;
  os.precision(4);
  os << exponent;
  return os.str();
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse radius '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ConfigError("cannot parse radius '" + item + "'");
    radii.push_back(v);
  }
  validate_ladder(radii, 1);
  return radii;
}

}  // namespace charges
