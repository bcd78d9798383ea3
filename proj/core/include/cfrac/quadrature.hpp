#pragma once

#include <functional>
#include <span>

namespace cfrac::quad {

inline constexpr double kDefaultRelTol = 1e-10;

/// Adaptive Gauss-Kronrod integral of f over [a, b] (a <= b or a > b).
/// Falls back to a fine composite Simpson rule when the adaptive estimate
/// does not reach `rel_tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = kDefaultRelTol);

/// Composite Simpson rule on equally spaced samples with spacing h. An odd
/// number of intervals closes with Simpson's 3/8 rule on the last three.
double simpson(std::span<const double> samples, double h);

}  // namespace cfrac::quad
