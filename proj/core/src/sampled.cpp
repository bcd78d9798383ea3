#include "cfrac/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfrac/errors.hpp"

namespace cfrac {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractional order must satisfy 0 < alpha <= 1, got " +
                      std::to_string(alpha));
  }
}

UniformGrid::UniformGrid(double t0, double dt, std::size_t n) : t0_(t0), dt_(dt), n_(n) {
  if (!std::isfinite(t0) || !std::isfinite(dt) || !(dt > 0.0)) {
    throw DomainError("grid spacing must be finite and positive");
  }
  if (n < 2) throw DomainError("grid needs at least two nodes");
}

UniformGrid UniformGrid::spanning(double t0, double t_max, std::size_t n) {
  if (n < 2) throw DomainError("grid needs at least two nodes");
  if (!(t_max > t0)) throw DomainError("grid end must exceed grid start");
  return {t0, (t_max - t0) / static_cast<double>(n - 1), n};
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = node(k);
  return out;
}

SampledFunction::SampledFunction(UniformGrid grid, std::vector<double> values, DimExpr dim)
    : grid_(grid), values_(std::move(values)), dim_(dim) {
  if (values_.size() != grid_.size()) {
    throw InputError("sample count " + std::to_string(values_.size()) +
                     " does not match grid size " + std::to_string(grid_.size()));
  }
  const auto bad = std::find_if(values_.begin(), values_.end(),
                                [](double v) { return !std::isfinite(v); });
  if (bad != values_.end()) {
    throw InputError("non-finite sample at node " +
                     std::to_string(std::distance(values_.begin(), bad)));
  }
}

SampledFunction SampledFunction::sample(const UniformGrid& grid,
                                        const std::function<double(double)>& f, DimExpr dim) {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = f(grid.node(k));
  return {grid, std::move(v), dim};
}

SampledFunction linear_combination(double a, const SampledFunction& f, double b,
                                   const SampledFunction& g) {
  if (!(f.grid_ == g.grid_)) throw DomainError("linear_combination: grids differ");
  if (f.dim_ != g.dim_) throw DimensionError("linear_combination: dimensions differ");
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a * f.values_[k] + b * g.values_[k];
  return {f.grid_, std::move(v), f.dim_};
}

double max_abs_difference(const SampledFunction& f, const SampledFunction& g) {
  if (f.size() != g.size()) throw DomainError("max_abs_difference: sizes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) worst = std::max(worst, std::abs(f[k] - g[k]));
  return worst;
}

KernelNormalization KernelNormalization::standard() {
  return {[](double alpha) { return 2.0 / (2.0 - alpha); }};
}

KernelNormalization KernelNormalization::scaled(double factor) {
  return {[factor](double alpha) { return factor * 2.0 / (2.0 - alpha); }};
}

double KernelNormalization::prefactor(double alpha) const {
  return (2.0 - alpha) * m_of_alpha(alpha) / (2.0 * (1.0 - alpha));
}

}  // namespace cfrac
