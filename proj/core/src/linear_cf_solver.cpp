#include "cfrac/linear_cf_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cfrac/errors.hpp"
#include "cfrac/kernel_ops.hpp"
#include "cfrac/quadrature.hpp"

namespace cfrac {

namespace {

constexpr std::size_t kScanIntervals = 2048;
constexpr double kMaxCellWidth = 0.25;

std::string fmt_tau(double tau) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", tau);
  return buf;
}

[[noreturn]] void throw_singular(double tau) {
  throw SingularityError(
      "leading coefficient 1 + (1-alpha) P(tau) vanishes at tau = " + fmt_tau(tau), tau);
}

double locate_root(const CoefficientFn& a, double lo, double hi) {
  double a_lo = a(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double a_mid = a(mid);
    if (a_mid == 0.0) return mid;
    if ((a_mid > 0.0) == (a_lo > 0.0)) {
      lo = mid;
      a_lo = a_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LinearFDEProblem LinearFDEProblem::constant(double p, double q, FractionalOrder alpha,
                                            double x0, double tau_max) {
  LinearFDEProblem problem;
  problem.P = [p](double) { return p; };
  problem.Q = [q](double) { return q; };
  problem.dP = [](double) { return 0.0; };
  problem.dQ = [](double) { return 0.0; };
  problem.alpha = alpha;
  problem.x0 = x0;
  problem.tau_max = tau_max;
  return problem;
}

double coefficient_derivative(const CoefficientFn& f, const CoefficientFn& analytic,
                              double tau) {
  if (analytic) return analytic(tau);
  // Fourth-order stencils; h near eps^(1/5) balances truncation and rounding.
  const double h = 1e-3 * std::max(1.0, std::abs(tau));
  if (tau - 2.0 * h < 0.0) {
    return (-25.0 * f(tau) + 48.0 * f(tau + h) - 36.0 * f(tau + 2.0 * h) +
            16.0 * f(tau + 3.0 * h) - 3.0 * f(tau + 4.0 * h)) /
           (12.0 * h);
  }
  return (f(tau - 2.0 * h) - 8.0 * f(tau - h) + 8.0 * f(tau + h) - f(tau + 2.0 * h)) / (12.0 * h);
}

ReducedODE reduce_to_ode(const LinearFDEProblem& problem) {
  if (!problem.P || !problem.Q) throw InputError("problem coefficients P and Q are required");
  if (!(problem.tau_max > 0.0) || !std::isfinite(problem.tau_max)) {
    throw DomainError("tau_max must be positive and finite");
  }
  const double alpha = problem.alpha.value();
  const double beta = 1.0 - alpha;
  const auto P = problem.P;
  const auto Q = problem.Q;
  const auto dP = problem.dP;
  const auto dQ = problem.dQ;

  ReducedODE ode{
      [P, beta](double tau) { return beta * P(tau) + 1.0; },
      [P, dP, alpha, beta](double tau) {
        return beta * coefficient_derivative(P, dP, tau) + alpha * P(tau);
      },
      [Q, dQ, alpha, beta](double tau) {
        return beta * coefficient_derivative(Q, dQ, tau) + alpha * Q(tau);
      },
  };

  const double h = problem.tau_max / static_cast<double>(kScanIntervals);
  double prev_tau = 0.0;
  double prev_a = 0.0;
  for (std::size_t k = 0; k <= kScanIntervals; ++k) {
    const double tau = k == kScanIntervals ? problem.tau_max : static_cast<double>(k) * h;
    const double p = P(tau);
    const double q = Q(tau);
    if (!std::isfinite(p) || !std::isfinite(q)) {
      throw InputError("coefficients are not finite at tau = " + fmt_tau(tau));
    }
    const double a = ode.a(tau);
    if (a == 0.0) throw_singular(tau);
    if (k > 0 && (a > 0.0) != (prev_a > 0.0)) throw_singular(locate_root(ode.a, prev_tau, tau));
    prev_tau = tau;
    prev_a = a;
  }
  return ode;
}

double integrating_factor(const LinearFDEProblem& problem, double tau) {
  if (tau < 0.0 || tau > problem.tau_max) {
    throw DomainError("integrating_factor: tau = " + fmt_tau(tau) + " outside [0, tau_max]");
  }
  return ClosedFormSolution(problem).mu(tau);
}

ClosedFormSolution::ClosedFormSolution(LinearFDEProblem problem)
    : problem_(std::make_shared<const LinearFDEProblem>(std::move(problem))),
      ode_(reduce_to_ode(*problem_)),
      constant_(ode_.a(0.0) * problem_->x0) {}

double ClosedFormSolution::log_mu_between(double from, double to) const {
  if (from == to) return 0.0;
  const auto& p = *problem_;
  if (p.log_integrating_factor) {
    return p.log_integrating_factor(to) - p.log_integrating_factor(from);
  }
  const double alpha = p.alpha.value();
  const double beta = 1.0 - alpha;
  return quad::integrate(
      [&](double u) {
        const double pu = p.P(u);
        const double denom = 1.0 + beta * pu;
        if (denom == 0.0) throw_singular(u);
        return alpha * pu / denom;
      },
      from, to);
}

double ClosedFormSolution::log_mu(double tau) const { return log_mu_between(0.0, tau); }

double ClosedFormSolution::mu(double tau) const { return std::exp(log_mu(tau)); }

double ClosedFormSolution::xi(double tau) const { return 1.0 / (ode_.a(tau) * mu(tau)); }

double ClosedFormSolution::evaluate(double tau) const {
  if (tau < 0.0) throw DomainError("evaluate: tau must be nonnegative");
  const double taus[] = {tau};
  return evaluate_sorted(taus).front();
}

std::vector<double> ClosedFormSolution::evaluate_sorted(std::span<const double> taus) const {
  const double a0 = ode_.a(0.0);
  const double x0 = problem_->x0;
  std::vector<double> x;
  x.reserve(taus.size());
  // Running log mu(tau) and int_0^tau (mu(u) / mu(tau)) c(u) du, advanced cell by cell so
  // that each quadrature only spans a short interval.
  double big_l = 0.0;
  double forcing = 0.0;
  double at = 0.0;
  for (const double target : taus) {
    if (!(target >= at)) throw DomainError("evaluate_sorted: tau values must be sorted and >= 0");
    const auto cells = static_cast<std::size_t>(std::ceil((target - at) / kMaxCellWidth));
    const double start = at;
    for (std::size_t j = 1; j <= cells; ++j) {
      const double hi = j == cells ? target : start + static_cast<double>(j) * kMaxCellWidth;
      const double step_l = log_mu_between(at, hi);
      const double cell = quad::integrate(
          [&](double u) { return std::exp(-log_mu_between(u, hi)) * ode_.c(u); }, at, hi);
      forcing = std::exp(-step_l) * forcing + cell;
      big_l += step_l;
      at = hi;
    }
    const double a_t = ode_.a(target);
    // The ratio a(0) / a(tau) is exactly 1 at tau = 0, so x(0) = x0.
    x.push_back(x0 * (a0 / a_t) * std::exp(-big_l) + forcing / a_t);
  }
  return x;
}

SampledFunction ClosedFormSolution::sample(const UniformGrid& grid) const {
  if (grid.t0() != 0.0) throw DomainError("sample: tau grid must start at 0");
  return {grid, evaluate_sorted(grid.nodes())};
}

ClosedFormSolution solve_closed_form(const LinearFDEProblem& problem) {
  return ClosedFormSolution(problem);
}

SampledFunction solve_numeric(const LinearFDEProblem& problem, std::size_t steps) {
  if (steps < 16) throw DomainError("solve_numeric: need at least 16 steps");
  const ReducedODE ode = reduce_to_ode(problem);
  const UniformGrid grid = UniformGrid::spanning(0.0, problem.tau_max, steps + 1);
  const double h = grid.dt();
  std::vector<double> x(steps + 1);
  x[0] = problem.x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double tau = grid.node(k);
    const double xk = x[k];
    const double k1 = ode.slope(tau, xk);
    const double k2 = ode.slope(tau + 0.5 * h, xk + 0.5 * h * k1);
    const double k3 = ode.slope(tau + 0.5 * h, xk + 0.5 * h * k2);
    const double k4 = ode.slope(tau + h, xk + h * k3);
    x[k + 1] = xk + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {grid, std::move(x)};
}

SampledFunction cf_residual(const LinearFDEProblem& problem, const SampledFunction& x) {
  const SampledFunction d = cf_derivative(x, problem.alpha);
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double tau = x.grid().node(k);
    r[k] = d[k] + problem.P(tau) * x[k] - problem.Q(tau);
  }
  return {x.grid(), std::move(r), x.dim()};
}

}  // namespace cfrac
