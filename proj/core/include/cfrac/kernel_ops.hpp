#pragma once

// Fractional derivatives of sampled functions.
//
// The Caputo-Fabrizio derivative with the exponential kernel
//
//   D f(t) = K(alpha) * int_0^t f'(s) exp(-lambda (t - s)) ds,
//   lambda = alpha / (1 - alpha),  K = (2 - alpha) M(alpha) / (2 (1 - alpha)),
//
// is discretized with the cell slope (f[k+1] - f[k]) / dt for f' and exact
// integration of the kernel over each cell. The kernel factorizes across
// cells, giving the O(n) recurrence
//
//   g[k+1] = exp(-lambda dt) g[k] + K slope[k] (1 - exp(-lambda dt)) / lambda.
//
// alpha = 1 is an exact branch returning the classical discrete derivative.

#include "cfrac/dims.hpp"
#include "cfrac/sampled.hpp"

namespace cfrac {

/// Caputo-Fabrizio derivative via the O(n) recurrence. The grid must start
/// at t0 = 0 (the lower limit of the memory integral).
SampledFunction cf_derivative(const SampledFunction& f, FractionalOrder order,
                              const KernelNormalization& norm = KernelNormalization::standard());

/// Same discretization as cf_derivative, evaluated as the O(n^2) double sum
/// over cells. Reference path for checking the recurrence.
SampledFunction cf_derivative_direct(
    const SampledFunction& f, FractionalOrder order,
    const KernelNormalization& norm = KernelNormalization::standard());

/// f(t) - f(0), the alpha -> 0 limit of the Caputo-Fabrizio derivative.
SampledFunction cf_limit_alpha_zero(const SampledFunction& f);

/// Second-order finite-difference derivative (central in the interior,
/// one-sided three-point at the ends). Output dim is f.dim - 1.
SampledFunction discrete_derivative(const SampledFunction& f);

/// L1 scheme for the Caputo derivative with lower limit 0. Exact for
/// piecewise-linear f; O(dt^(2 - alpha)) otherwise. Output dim is
/// f.dim - alpha.
SampledFunction caputo_derivative(const SampledFunction& f, FractionalOrder order);

/// sigma^(alpha - 1) times the Caputo derivative. sigma must be a positive
/// time (exponent +1). Output dim is f.dim - 1.
SampledFunction sigma_rescaled_caputo(const SampledFunction& f, FractionalOrder order,
                                      const DimensionedQuantity& sigma);

/// Truncated Laplace transform int_0^T f(t) exp(-s t) dt by composite
/// Simpson on the sample grid (T = last node).
double laplace_transform(const SampledFunction& f, double s);

/// Smallest horizon T with exp(-s T) < 1e-12.
double default_laplace_horizon(double s);

/// |L{D f}(s) - (s F(s) - f(0)) / ((1 - alpha)(s + lambda))| with both
/// transforms computed by truncated quadrature on f's grid. Throws
/// DomainError when s <= 0, when the grid does not start at 0, or when the
/// truncation tail exp(-s T) max(|f(T)|, |D f(T)|) exceeds `tail_budget`.
double cf_laplace_residual(const SampledFunction& f, FractionalOrder order, double s,
                           const KernelNormalization& norm = KernelNormalization::standard(),
                           double tail_budget = 1e-10);

}  // namespace cfrac
