#include "cfrac/kernel_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cfrac/errors.hpp"
#include "cfrac/quadrature.hpp"

namespace cfrac {

namespace {

void require_origin(const SampledFunction& f, const char* op) {
  if (f.grid().t0() != 0.0) {
    throw DomainError(std::string(op) + ": grid must start at t0 = 0, got t0 = " +
                      std::to_string(f.grid().t0()));
  }
}

std::vector<double> cell_slopes(const SampledFunction& f) {
  const double dt = f.grid().dt();
  std::vector<double> slope(f.size() - 1);
  for (std::size_t k = 0; k + 1 < f.size(); ++k) slope[k] = (f[k + 1] - f[k]) / dt;
  return slope;
}

// Weight of one cell's slope in the output node that immediately follows it:
// K * int_0^dt exp(-lambda u) du.
double cell_weight(double alpha, double dt, const KernelNormalization& norm) {
  const double lambda = alpha / (1.0 - alpha);
  return norm.prefactor(alpha) * (-std::expm1(-lambda * dt)) / lambda;
}

}  // namespace

SampledFunction cf_derivative(const SampledFunction& f, FractionalOrder order,
                              const KernelNormalization& norm) {
  require_origin(f, "cf_derivative");
  if (order.is_classical()) {
    const auto d = discrete_derivative(f);
    return {f.grid(), {d.values().begin(), d.values().end()}, f.dim()};
  }
  const double dt = f.grid().dt();
  const double decay = std::exp(-order.kernel_rate() * dt);
  const double weight = cell_weight(order.value(), dt, norm);

  std::vector<double> g(f.size(), 0.0);
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    const double slope = (f[k + 1] - f[k]) / dt;
    g[k + 1] = decay * g[k] + weight * slope;
  }
  return {f.grid(), std::move(g), f.dim()};
}

SampledFunction cf_derivative_direct(const SampledFunction& f, FractionalOrder order,
                                     const KernelNormalization& norm) {
  require_origin(f, "cf_derivative_direct");
  if (order.is_classical()) return cf_derivative(f, order, norm);
  const double dt = f.grid().dt();
  const double lambda = order.kernel_rate();
  const double weight = cell_weight(order.value(), dt, norm);
  const auto slope = cell_slopes(f);

  std::vector<double> g(f.size(), 0.0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      // Cell j spans [t_j, t_{j+1}]; its kernel integral is measured from t_k.
      sum += slope[j] * std::exp(-lambda * dt * static_cast<double>(k - j - 1));
    }
    g[k] = weight * sum;
  }
  return {f.grid(), std::move(g), f.dim()};
}

SampledFunction cf_limit_alpha_zero(const SampledFunction& f) {
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) v[k] = f[k] - f[0];
  return {f.grid(), std::move(v), f.dim()};
}

SampledFunction discrete_derivative(const SampledFunction& f) {
  const std::size_t n = f.size();
  const double dt = f.grid().dt();
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / dt;
  } else {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * dt);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  }
  return {f.grid(), std::move(d), f.dim() - DimExpr::seconds(1)};
}

SampledFunction caputo_derivative(const SampledFunction& f, FractionalOrder order) {
  require_origin(f, "caputo_derivative");
  const DimExpr out_dim = f.dim() + DimExpr::alpha(Rational{-1});
  if (order.is_classical()) {
    const auto d = discrete_derivative(f);
    return {f.grid(), {d.values().begin(), d.values().end()}, out_dim};
  }
  const double alpha = order.value();
  const double dt = f.grid().dt();
  const std::size_t n = f.size();
  const double scale = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);

  // b[j] = (j+1)^(1-alpha) - j^(1-alpha)
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j);
    b[j] = std::pow(jj + 1.0, 1.0 - alpha) - std::pow(jj, 1.0 - alpha);
  }
  std::vector<double> diff(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) diff[k] = f[k + 1] - f[k];

  std::vector<double> g(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += b[j] * diff[m - 1 - j];
    g[m] = scale * sum;
  }
  return {f.grid(), std::move(g), out_dim};
}

SampledFunction sigma_rescaled_caputo(const SampledFunction& f, FractionalOrder order,
                                      const DimensionedQuantity& sigma) {
  if (sigma.dim() != DimExpr::seconds(1)) {
    throw DimensionError("sigma must carry units of seconds, got " + sigma.dim().to_string());
  }
  if (!(sigma.value() > 0.0) || !std::isfinite(sigma.value())) {
    throw DomainError("sigma must be positive, got " + std::to_string(sigma.value()));
  }
  const DimExpr exponent{Rational{-1}, Rational{1}};  // alpha - 1
  const DimensionedQuantity factor = sigma.pow(exponent, order.value());
  const auto c = caputo_derivative(f, order);
  std::vector<double> v(c.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = factor.value() * c[k];
  return {f.grid(), std::move(v), c.dim() + factor.dim()};
}

double laplace_transform(const SampledFunction& f, double s) {
  const auto& grid = f.grid();
  std::vector<double> y(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) y[k] = f[k] * std::exp(-s * grid.node(k));
  return quad::simpson(y, grid.dt());
}

double default_laplace_horizon(double s) {
  if (!(s > 0.0)) throw DomainError("Laplace variable must be positive");
  return -std::log(1e-12) / s;
}

double cf_laplace_residual(const SampledFunction& f, FractionalOrder order, double s,
                           const KernelNormalization& norm, double tail_budget) {
  if (!(s > 0.0)) throw DomainError("cf_laplace_residual: s must be positive");
  require_origin(f, "cf_laplace_residual");
  const auto g = cf_derivative(f, order, norm);
  const double horizon = f.grid().back();
  const double tail =
      std::exp(-s * horizon) * std::max(std::abs(f[f.size() - 1]), std::abs(g[g.size() - 1]));
  if (tail > tail_budget) {
    throw DomainError("cf_laplace_residual: horizon T = " + std::to_string(horizon) +
                      " too short for s = " + std::to_string(s) + " (tail " +
                      std::to_string(tail) + ")");
  }
  const double alpha = order.value();
  const double lhs = laplace_transform(g, s);
  const double big_f = laplace_transform(f, s);
  // (1/(1-alpha)) (sF - f0) / (s + alpha/(1-alpha)) == (sF - f0) / ((1-alpha)s + alpha)
  const double rhs = (s * big_f - f[0]) / ((1.0 - alpha) * s + alpha);
  return std::abs(lhs - rhs);
}

}  // namespace cfrac
