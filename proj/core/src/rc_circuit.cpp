#include "cfrac/rc_circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include "cfrac/errors.hpp"

namespace cfrac {

namespace rc {

namespace {

// log1p(beta x) / beta, continuous at beta = 0.
double log1p_ratio(double x, double beta) {
  return beta == 0.0 ? x : std::log1p(beta * x) / beta;
}

std::string alpha_label(double alpha) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "alpha=%.15g", alpha);
  return buf;
}

}  // namespace

RCParams::RCParams(double resistance, double capacitance, double v0)
    : r_(resistance), c_(capacitance), v0_(v0) {
  if (!(resistance > 0.0) || !std::isfinite(resistance)) {
    throw DomainError("resistance must be positive");
  }
  if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
    throw DomainError("capacitance must be positive");
  }
  if (!std::isfinite(v0)) throw DomainError("V0 must be finite");
  gamma_ = 1.0 / (r_ * c_);
  q0_ = v0_ * c_;
}

RCParams RCParams::from_rates(double gamma, double q0) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("Gamma must be positive");
  if (!std::isfinite(q0)) throw DomainError("q0 must be finite");
  return RCParams(1.0 / gamma, 1.0, q0, gamma, q0);
}

TimeScale rc_time_scale(const RCParams& params) {
  return TimeScale::rc_exponential(params.gamma());
}

double initial_condition_constant(const RCParams& params, FractionalOrder order) {
  // (2 - alpha)^(1/(1-alpha)) = exp(log1p(beta) / beta)
  return -params.q0() * std::exp(log1p_ratio(1.0, order.complement()));
}

double charge_tau(const RCParams& params, double tau, FractionalOrder order, double c0) {
  if (tau < 0.0) throw DomainError("charge_tau: tau must be nonnegative");
  const double beta = order.complement();
  // (1 + beta tau) (1 + beta (1 + tau))^(-1/beta); note 2 - alpha + beta tau = 1 + beta (1 + tau).
  const double log_shape = std::log1p(beta * tau) - log1p_ratio(1.0 + tau, beta);
  return params.q0() + c0 * std::exp(log_shape);
}

double charge_t(const RCParams& params, double t, FractionalOrder order) {
  if (t < 0.0) throw DomainError("charge_t: t must be nonnegative");
  const double q0 = params.q0();
  const double gt = params.gamma() * t;
  const double alpha = order.value();
  if (alpha > 1.0 - kClassicalCrossover) return -q0 * std::expm1(-gt);

  const double beta = 1.0 - alpha;
  const double x = beta * gt;  // log E
  // log((1 - alpha + E) / (2 - alpha))
  double log_ratio;
  if (x < 30.0) {
    log_ratio = std::log1p(std::expm1(x) / (2.0 - alpha));
  } else {
    log_ratio = x + std::log1p(beta * std::exp(-x)) - std::log(2.0 - alpha);
  }
  // q / q0 = 1 - exp(x - log_ratio / beta)
  return -q0 * std::expm1(x - log_ratio / beta);
}

double capacitor_voltage(const RCParams& params, double t, FractionalOrder order) {
  return charge_t(params, t, order) / params.capacitance();
}

LinearFDEProblem rc_problem(const RCParams& params, FractionalOrder order, double tau_max) {
  const double alpha = order.value();
  const double beta = order.complement();
  const double q0 = params.q0();
  LinearFDEProblem problem;
  problem.P = [beta](double tau) { return 1.0 / (1.0 + beta * tau); };
  problem.dP = [beta](double tau) {
    const double d = 1.0 + beta * tau;
    return -beta / (d * d);
  };
  problem.Q = [beta, q0](double tau) { return q0 / (1.0 + beta * tau); };
  problem.dQ = [beta, q0](double tau) {
    const double d = 1.0 + beta * tau;
    return -q0 * beta / (d * d);
  };
  // int_0^tau alpha / (2 - alpha + beta u) du
  problem.log_integrating_factor = [alpha, beta](double tau) {
    return alpha * log1p_ratio(tau / (2.0 - alpha), beta);
  };
  problem.alpha = order;
  problem.x0 = 0.0;
  problem.tau_max = tau_max;
  return problem;
}

std::vector<Curve> figure2_curves(const RCParams& params, std::span<const FractionalOrder> alphas,
                                  const UniformGrid& t_grid, Quantity quantity,
                                  std::size_t workers) {
  if (alphas.empty()) throw DomainError("figure2_curves: need at least one order");
  if (t_grid.t0() != 0.0) throw DomainError("figure2_curves: time grid must start at 0");

  std::vector<Curve> curves(alphas.size());
  auto build = [&](std::size_t i) {
    const FractionalOrder order = alphas[i];
    Curve c;
    c.label = alpha_label(order.value());
    c.abscissa_name = "t";
    c.value_name = quantity == Quantity::voltage ? "V_C" : "q";
    c.alpha = order.value();
    c.rows.reserve(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double t = t_grid.node(k);
      const double v = quantity == Quantity::voltage ? capacitor_voltage(params, t, order)
                                                     : charge_t(params, t, order);
      c.rows.emplace_back(t, v);
    }
    curves[i] = std::move(c);
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(workers, alphas.size()));
  if (n_workers == 1) {
    for (std::size_t i = 0; i < alphas.size(); ++i) build(i);
    return curves;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < alphas.size(); i += n_workers) build(i);
    });
  }
  pool.clear();
  return curves;
}

}  // namespace rc
}  // namespace cfrac
