#pragma once

// Dimensionless time for Caputo-Fabrizio equations.
//
// Given an auxiliary time scale phi(t, alpha) > 0 with units of seconds, the
// dimensionless time is tau(t, alpha) = int_0^t ds / phi(s, alpha), and d/dt
// is replaced by (1/phi) times the (dimensionless) CF operator in tau.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/sampled.hpp"

namespace cfrac {

/// phi(t, alpha) in seconds, plus optional closed forms.
class TimeScale {
 public:
  using Fn = std::function<double(double, double)>;

  struct ClosedForms {
    Fn tau_of_t;       // (t, alpha) -> tau
    Fn t_of_tau;       // (tau, alpha) -> t
    Fn dphi_dt;        // (t, alpha) -> d phi / dt
  };

  /// `breakpoints` lists times where phi is not smooth; quadrature of 1/phi
  /// splits there.
  TimeScale(std::string name, Fn phi, ClosedForms closed = {},
            std::vector<double> breakpoints = {});

  /// phi = sigma seconds; tau = t / sigma.
  static TimeScale constant(double sigma_seconds);
  /// phi = exp(-(1 - alpha) gamma t) / gamma with the closed-form
  /// tau = (exp((1 - alpha) gamma t) - 1) / (1 - alpha) and its inverse.
  static TimeScale rc_exponential(double gamma);
  /// Tabulated phi(t) (independent of alpha), monotone-cubic (PCHIP)
  /// interpolation inside the table, constant extrapolation outside it.
  static TimeScale tabulated(std::vector<double> t, std::vector<double> phi);

  const std::string& name() const noexcept { return name_; }

  /// phi(t, alpha); throws DomainError if it is not strictly positive.
  double phi(double t, FractionalOrder order) const;
  /// d phi / dt if a closed form was supplied.
  std::optional<double> dphi_dt(double t, FractionalOrder order) const;

  bool has_closed_tau() const noexcept { return static_cast<bool>(closed_.tau_of_t); }
  bool has_closed_inverse() const noexcept { return static_cast<bool>(closed_.t_of_tau); }
  const ClosedForms& closed_forms() const noexcept { return closed_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

 private:
  std::string name_;
  Fn phi_;
  ClosedForms closed_;
  std::vector<double> breakpoints_;
};

/// tau(t); closed form when available, else adaptive quadrature to 1e-10.
double tau_of_t(const TimeScale& scale, double t, FractionalOrder order);

/// tau(t) by adaptive quadrature regardless of any closed form.
double tau_of_t_quadrature(const TimeScale& scale, double t, FractionalOrder order);

/// Inverse of tau_of_t; closed form when available, else bracketed root
/// finding on the strictly increasing map. Throws RangeError carrying the
/// supremum estimate when tau is not reachable.
double t_of_tau(const TimeScale& scale, double tau, FractionalOrder order);

/// t_of_tau at nondecreasing tau >= 0, each root bracketed from the previous
/// one so that only short integrals are evaluated.
std::vector<double> t_of_tau_sorted(const TimeScale& scale, std::span<const double> taus,
                                    FractionalOrder order);

/// dx/dt + P x = Q with constant P, Q (units 1/s and [x]/s).
struct ClassicalLinearODE {
  double P;
  double Q;
  double x0;
};

/// Classical solution x(t) of the constant-coefficient ODE.
double classical_solution(const ClassicalLinearODE& ode, double t);

/// The dimensionless CF problem with P(tau) = P phi(t(tau)), Q(tau) =
/// Q phi(t(tau)). Without a closed-form inverse, t(tau) is tabulated once on
/// [0, 1.01 tau_max] (RK4 on dt/dtau = phi, 8192 steps, cubic Hermite
/// interpolation); RangeError if tau_max is unreachable. Supplies analytic
/// coefficient derivatives when the scale has a closed form for dphi/dt.
LinearFDEProblem rescale_problem(const ClassicalLinearODE& ode, const TimeScale& scale,
                                 FractionalOrder order, double tau_max);

/// Time exponents of the three terms {D x, P(tau) x, Q(tau)} of the
/// rescaled equation, built from [P] = 1/s, [Q] = [x]/s, [phi] = s and x
/// treated as dimensionless.
std::vector<DimExpr> rescaled_equation_term_dims();

/// Solves the rescaled problem at alpha = 1 and the classical ODE on the
/// grid; returns the largest discrepancy after mapping tau back to t.
double check_alpha_one_reduction(const ClassicalLinearODE& ode, const TimeScale& scale,
                                 const UniformGrid& t_grid);

}  // namespace cfrac
