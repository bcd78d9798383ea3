#pragma once

// First-order linear Caputo-Fabrizio equations in dimensionless time,
//
//   D x(tau) + P(tau) x(tau) = Q(tau),   x(0) = x0.
//
// Differentiating once removes the memory integral and leaves the reduced ODE
//
//   a x' + b x - c = 0,
//   a = (1-alpha) P + 1,  b = (1-alpha) P' + alpha P,  c = (1-alpha) Q' + alpha Q,
//
// with integrating factor mu = exp int_0^tau alpha P / a. Since
// (a mu)' = b mu, the solution is x = (C + int_0^tau mu c) / (a mu) with
// C = a(0) x0.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cfrac/sampled.hpp"

namespace cfrac {

using CoefficientFn = std::function<double(double)>;

struct LinearFDEProblem {
  CoefficientFn P;
  CoefficientFn Q;
  /// Optional analytic derivatives; fourth-order finite differences otherwise.
  CoefficientFn dP;
  CoefficientFn dQ;
  FractionalOrder alpha{1.0};
  double x0 = 0.0;
  double tau_max = 1.0;
  /// Optional closed form of log mu(tau).
  CoefficientFn log_integrating_factor;

  /// Constant coefficients P = p, Q = q.
  static LinearFDEProblem constant(double p, double q, FractionalOrder alpha, double x0,
                                   double tau_max);
};

struct ReducedODE {
  CoefficientFn a;
  CoefficientFn b;
  CoefficientFn c;

  /// x' = (c - b x) / a
  double slope(double tau, double x) const { return (c(tau) - b(tau) * x) / a(tau); }
};

/// P'(tau) (analytic or finite-difference).
double coefficient_derivative(const CoefficientFn& f, const CoefficientFn& analytic, double tau);

/// Builds a, b, c. Throws SingularityError with the location if a(tau)
/// vanishes on [0, tau_max], InputError if P or Q is not finite there.
ReducedODE reduce_to_ode(const LinearFDEProblem& problem);

/// mu(tau) = exp int_0^tau alpha P / (1 + (1-alpha) P); mu(0) = 1.
double integrating_factor(const LinearFDEProblem& problem, double tau);

class ClosedFormSolution {
 public:
  explicit ClosedFormSolution(LinearFDEProblem problem);

  double mu(double tau) const;
  /// Xi = 1 / (a mu)
  double xi(double tau) const;
  /// Integration constant C = a(0) x0 (forcing integral anchored at 0).
  double constant() const noexcept { return constant_; }
  double evaluate(double tau) const;
  /// x at nondecreasing tau >= 0. The integrals are accumulated cell by cell
  /// (cells no wider than 0.25) instead of restarting from 0 at each point.
  std::vector<double> evaluate_sorted(std::span<const double> taus) const;
  /// evaluate_sorted on a tau grid starting at 0.
  SampledFunction sample(const UniformGrid& grid) const;

  const LinearFDEProblem& problem() const noexcept { return *problem_; }

 private:
  double log_mu(double tau) const;
  double log_mu_between(double from, double to) const;

  std::shared_ptr<const LinearFDEProblem> problem_;
  ReducedODE ode_;
  double constant_;
};

ClosedFormSolution solve_closed_form(const LinearFDEProblem& problem);

/// Classical RK4 on the reduced ODE over a uniform tau grid with `steps`
/// intervals on [0, tau_max]. Requires steps >= 16.
SampledFunction solve_numeric(const LinearFDEProblem& problem, std::size_t steps);

/// r(tau) = D x + P x - Q with D the CF recurrence of kernel_ops. Nonzero
/// r(0) = P(0) x0 - Q(0) whenever the initial value does not balance the
/// coefficients; the mismatch then decays like exp(-alpha tau / (1 - alpha)).
SampledFunction cf_residual(const LinearFDEProblem& problem, const SampledFunction& x);

}  // namespace cfrac
