#pragma once

// Fractional RC charging circuit in dimensionless time.
//
// With Gamma = 1/(RC), q0 = V0 C and phi(t, alpha) = exp(-(1-alpha) Gamma t) / Gamma
// the circuit equation becomes
//
//   D q(tau) + q / (1 + (1-alpha) tau) = q0 / (1 + (1-alpha) tau),
//
// whose reduced-ODE solution is
//
//   q(tau) = q0 + C0 (1 + (1-alpha) tau) (2 - alpha + (1-alpha) tau)^(1/(alpha-1))
//
// and, with q(0) = 0 and tau = (exp((1-alpha) Gamma t) - 1) / (1-alpha),
//
//   q(t) = q0 (1 - E ((2 - alpha) / (1 - alpha + E))^(1/(1-alpha))),  E = exp((1-alpha) Gamma t).

#include <cstddef>
#include <span>
#include <vector>

#include "cfrac/curve.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rescaling.hpp"
#include "cfrac/sampled.hpp"

namespace cfrac::rc {

/// Orders above 1 - kClassicalCrossover use the classical charging curve in
/// charge_t; the fractional power 1/(1-alpha) is no longer meaningful there.
inline constexpr double kClassicalCrossover = 1e-6;

class RCParams {
 public:
  /// R in ohms, C in farads (both > 0), V0 in volts.
  RCParams(double resistance, double capacitance, double v0);

  /// C = 1 F, V0 = q0, R = 1/Gamma; Gamma and q0 are stored exactly.
  static RCParams from_rates(double gamma, double q0);

  double resistance() const noexcept { return r_; }
  double capacitance() const noexcept { return c_; }
  double v0() const noexcept { return v0_; }
  double gamma() const noexcept { return gamma_; }
  double q0() const noexcept { return q0_; }

 private:
  RCParams(double r, double c, double v0, double gamma, double q0)
      : r_(r), c_(c), v0_(v0), gamma_(gamma), q0_(q0) {}

  double r_;
  double c_;
  double v0_;
  double gamma_;
  double q0_;
};

TimeScale rc_time_scale(const RCParams& params);

/// C0 = -q0 (2 - alpha)^(1/(1-alpha)) so that q(tau = 0) = 0. At alpha = 1
/// this is the limit -q0 e.
double initial_condition_constant(const RCParams& params, FractionalOrder order);

/// Charge in dimensionless time for a given integration constant, evaluated
/// in log form. At alpha = 1 the power factor takes its limit
/// exp(-(1 + tau)).
double charge_tau(const RCParams& params, double tau, FractionalOrder order, double c0);

/// Charge in ordinary time with q(0) = 0.
double charge_t(const RCParams& params, double t, FractionalOrder order);

/// V_C = q / C.
double capacitor_voltage(const RCParams& params, double t, FractionalOrder order);

/// The dimensionless circuit equation with P = 1/(1 + (1-alpha) tau),
/// Q = q0 P, analytic derivatives, the closed-form integrating factor
/// ((2 - alpha + (1-alpha) tau) / (2 - alpha))^(alpha/(1-alpha)) and x0 = 0.
LinearFDEProblem rc_problem(const RCParams& params, FractionalOrder order, double tau_max);

enum class Quantity { voltage, charge };

/// One capacitor curve per order on t_grid (t0 = 0), in input order.
/// `workers` > 1 evaluates curves concurrently; the result is identical.
std::vector<Curve> figure2_curves(const RCParams& params, std::span<const FractionalOrder> alphas,
                                  const UniformGrid& t_grid, Quantity quantity = Quantity::voltage,
                                  std::size_t workers = 1);

}  // namespace cfrac::rc
