#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cfrac/dims.hpp"

namespace cfrac {

/// Order alpha of a fractional derivative, 0 < alpha <= 1.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }
  bool is_classical() const noexcept { return alpha_ == 1.0; }
  /// 1 - alpha
  double complement() const noexcept { return 1.0 - alpha_; }
  /// Decay rate alpha / (1 - alpha) of the exponential kernel (alpha < 1).
  double kernel_rate() const noexcept { return alpha_ / (1.0 - alpha_); }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double alpha_;
};

/// Nodes t0 + k dt, k = 0..n-1.
class UniformGrid {
 public:
  UniformGrid(double t0, double dt, std::size_t n);

  /// n nodes spanning [t0, t_max] inclusive.
  static UniformGrid spanning(double t0, double t_max, std::size_t n);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return n_; }
  double node(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double back() const noexcept { return node(n_ - 1); }
  std::vector<double> nodes() const;

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

 private:
  double t0_;
  double dt_;
  std::size_t n_;
};

/// Real samples of a function of time on a uniform grid, tagged with the
/// time exponent of its values.
class SampledFunction {
 public:
  /// Throws InputError on a length mismatch or non-finite sample.
  SampledFunction(UniformGrid grid, std::vector<double> values,
                  DimExpr dim = DimExpr::dimensionless());

  static SampledFunction sample(const UniformGrid& grid, const std::function<double(double)>& f,
                                DimExpr dim = DimExpr::dimensionless());

  const UniformGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }
  const DimExpr& dim() const noexcept { return dim_; }

  /// Pointwise a*f + b*g on a shared grid and dimension.
  friend SampledFunction linear_combination(double a, const SampledFunction& f, double b,
                                            const SampledFunction& g);

 private:
  UniformGrid grid_;
  std::vector<double> values_;
  DimExpr dim_;
};

/// Largest pointwise |f - g| on a shared grid.
double max_abs_difference(const SampledFunction& f, const SampledFunction& g);

/// Normalization M(alpha) of the Caputo-Fabrizio kernel. The operator
/// prefactor is (2 - alpha) M(alpha) / (2 (1 - alpha)).
struct KernelNormalization {
  std::function<double(double)> m_of_alpha;

  /// M(alpha) = 2 / (2 - alpha); the prefactor reduces to 1 / (1 - alpha).
  static KernelNormalization standard();
  /// The standard normalization multiplied by a constant factor.
  static KernelNormalization scaled(double factor);

  double prefactor(double alpha) const;
};

}  // namespace cfrac
