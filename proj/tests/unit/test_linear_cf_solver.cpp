#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cfrac/errors.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rc_circuit.hpp"
#include "support/oracles.hpp"

namespace cfrac {
namespace {

// Constant coefficients: the reduced ODE is a x' + alpha p x = alpha q with
// a = 1 + (1 - alpha) p, so x relaxes exponentially to q / p.
double constant_oracle(double p, double q, double alpha, double x0, double tau) {
  const double kappa = alpha * p / (1.0 + (1.0 - alpha) * p);
  return q / p + (x0 - q / p) * std::exp(-kappa * tau);
}

TEST(ClosedForm, ConstantCoefficientsMatchExponentialOracle) {
  for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
    const auto problem = LinearFDEProblem::constant(2.0, 1.0, FractionalOrder{alpha}, 0.2, 6.0);
    const auto sol = solve_closed_form(problem);
    for (double tau : {0.0, 0.5, 2.0, 6.0}) {
      EXPECT_NEAR(sol.evaluate(tau), constant_oracle(2.0, 1.0, alpha, 0.2, tau), 1e-10)
          << "alpha " << alpha << " tau " << tau;
    }
  }
}

TEST(ClosedForm, OracleSatisfiesTheFractionalEquation) {
  // Independent of the reduction: plug the oracle into the CF integral.
  const double alpha = 0.6, p = 1.5, q = 0.9, x0 = 0.1;
  const double kappa = alpha * p / (1.0 + (1.0 - alpha) * p);
  const double lambda = alpha / (1.0 - alpha);
  for (double tau : {0.5, 1.0, 3.0}) {
    const double dx = testing::cf_by_quadrature(
        [&](double s) { return -kappa * (x0 - q / p) * std::exp(-kappa * s); }, alpha, tau);
    const double residual = dx + p * constant_oracle(p, q, alpha, x0, tau) - q;
    EXPECT_NEAR(residual, (p * x0 - q) * std::exp(-lambda * tau), 1e-10);
  }
}

TEST(ClosedForm, EvaluateAtZeroIsInitialValue) {
  const auto sol = solve_closed_form(LinearFDEProblem::constant(0.7, 3.0, FractionalOrder{0.4},
                                                                0.123456789, 2.0));
  EXPECT_EQ(sol.evaluate(0.0), 0.123456789);
  EXPECT_DOUBLE_EQ(sol.constant(), (1.0 + 0.6 * 0.7) * 0.123456789);
  EXPECT_THROW(sol.evaluate(-1.0), DomainError);
}

TEST(IntegratingFactor, Examples) {
  const auto constant = LinearFDEProblem::constant(2.0, 0.0, FractionalOrder{0.5}, 0.0, 4.0);
  EXPECT_EQ(integrating_factor(constant, 0.0), 1.0);
  EXPECT_NEAR(integrating_factor(constant, 1.0), std::exp(0.5 * 2.0 / 2.0), 1e-12);
  EXPECT_THROW(integrating_factor(constant, 5.0), DomainError);
  EXPECT_THROW(integrating_factor(constant, -0.1), DomainError);

  // Closed-form RC factor against quadrature of alpha P / a.
  const auto params = rc::RCParams::from_rates(1.0, 1.0);
  for (double alpha : {0.3, 0.5, 0.9}) {
    auto rc = rc::rc_problem(params, FractionalOrder{alpha}, 20.0);
    const double beta = 1.0 - alpha;
    for (double tau : {0.5, 5.0, 20.0}) {
      const double expected =
          std::pow((2.0 - alpha + beta * tau) / (2.0 - alpha), alpha / beta);
      EXPECT_NEAR(integrating_factor(rc, tau), expected, 1e-12 * expected);
      auto bare = rc;
      bare.log_integrating_factor = nullptr;
      EXPECT_NEAR(integrating_factor(bare, tau), expected, 1e-9 * expected);
    }
  }
}

TEST(IntegratingFactor, SatisfiesProductIdentity) {
  // (a mu)' = b mu for variable coefficients.
  LinearFDEProblem problem;
  problem.P = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  problem.dP = [](double t) { return 0.5 * std::cos(t); };
  problem.Q = [](double) { return 1.0; };
  problem.alpha = FractionalOrder{0.4};
  problem.tau_max = 5.0;
  const auto sol = solve_closed_form(problem);
  const auto ode = reduce_to_ode(problem);
  const double h = 1e-4;
  for (double tau : {0.5, 1.7, 3.2, 4.5}) {
    const double lhs = (ode.a(tau + h) * sol.mu(tau + h) - ode.a(tau - h) * sol.mu(tau - h)) /
                       (2 * h);
    EXPECT_NEAR(lhs, ode.b(tau) * sol.mu(tau), 1e-7 * sol.mu(tau));
  }
}

TEST(ClosedForm, RcMatchesChargeFormula) {
  const auto params = rc::RCParams::from_rates(1.0, 1.0);
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    const FractionalOrder order{alpha};
    const auto sol = solve_closed_form(rc::rc_problem(params, order, 20.0));
    const double c0 = rc::initial_condition_constant(params, order);
    for (double tau : {0.0, 0.1, 1.0, 5.0, 20.0}) {
      EXPECT_NEAR(sol.evaluate(tau), rc::charge_tau(params, tau, order, c0), 1e-10)
          << "alpha " << alpha << " tau " << tau;
    }
  }
}

TEST(ClosedForm, SampleMatchesPointwiseEvaluation) {
  const auto params = rc::RCParams::from_rates(1.0, 2.0);
  auto problem = rc::rc_problem(params, FractionalOrder{0.5}, 10.0);
  problem.log_integrating_factor = nullptr;
  const auto sol = solve_closed_form(problem);
  const auto grid = UniformGrid::spanning(0.0, 10.0, 101);
  const auto sampled = sol.sample(grid);
  for (std::size_t k = 0; k < grid.size(); k += 10) {
    EXPECT_NEAR(sampled[k], sol.evaluate(grid.node(k)), 1e-10);
  }
  EXPECT_THROW(sol.sample(UniformGrid(1.0, 0.1, 5)), DomainError);
}

TEST(SolveNumeric, AgreesWithClosedForm) {
  const auto params = rc::RCParams::from_rates(1.0, 1.0);
  for (double alpha : {0.5, 0.7, 0.9, 1.0}) {
    const auto problem = rc::rc_problem(params, FractionalOrder{alpha}, 20.0);
    const auto numeric = solve_numeric(problem, 4000);
    const auto exact = solve_closed_form(problem).sample(numeric.grid());
    EXPECT_LT(max_abs_difference(numeric, exact), 1e-8) << "alpha " << alpha;
  }
}

TEST(SolveNumeric, FourthOrderStepDoubling) {
  LinearFDEProblem problem;
  problem.P = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  problem.Q = [](double t) { return std::cos(t); };
  problem.alpha = FractionalOrder{0.6};
  problem.x0 = 0.3;
  problem.tau_max = 4.0;
  const auto sol = solve_closed_form(problem);
  auto error = [&](std::size_t steps) {
    const auto x = solve_numeric(problem, steps);
    return std::abs(x[steps] - sol.evaluate(problem.tau_max));
  };
  const double ratio = error(20) / error(40);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
  EXPECT_THROW(solve_numeric(problem, 8), DomainError);
}

TEST(ReduceToOde, ReportsSingularity) {
  LinearFDEProblem problem;
  problem.P = [](double t) { return -t; };
  problem.Q = [](double) { return 1.0; };
  problem.alpha = FractionalOrder{0.5};
  problem.tau_max = 5.0;
  try {
    reduce_to_ode(problem);
    FAIL() << "expected SingularityError";
  } catch (const SingularityError& e) {
    EXPECT_NEAR(e.location(), 2.0, 1e-10);
  }
  // At alpha = 1 the leading coefficient is identically 1.
  problem.alpha = FractionalOrder{1.0};
  EXPECT_NO_THROW(reduce_to_ode(problem));
}

TEST(ReduceToOde, RejectsBadCoefficients) {
  LinearFDEProblem problem;
  problem.P = [](double t) { return t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
  problem.Q = [](double) { return 1.0; };
  problem.alpha = FractionalOrder{0.5};
  problem.tau_max = 1.0;
  EXPECT_THROW(reduce_to_ode(problem), InputError);

  problem.P = [](double) { return 1.0; };
  problem.tau_max = 0.0;
  EXPECT_THROW(reduce_to_ode(problem), DomainError);
}

TEST(ClosedForm, SuperpositionProperty) {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> a(0.1, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double w1 = u(rng), w2 = u(rng), x1 = u(rng), x2 = u(rng);
    const FractionalOrder order{a(rng)};
    auto make = [&](CoefficientFn q, double x0) {
      LinearFDEProblem p;
      p.P = [](double t) { return 0.5 + 0.25 * std::cos(t); };
      p.Q = std::move(q);
      p.alpha = order;
      p.x0 = x0;
      p.tau_max = 3.0;
      return solve_closed_form(p);
    };
    const auto s1 = make([w1](double t) { return std::sin(w1 * t); }, x1);
    const auto s2 = make([w2](double t) { return 1.0 + w2 * t; }, x2);
    const auto s12 = make([w1, w2](double t) { return std::sin(w1 * t) + 1.0 + w2 * t; }, x1 + x2);
    for (double tau : {0.3, 1.5, 3.0}) {
      EXPECT_NEAR(s12.evaluate(tau), s1.evaluate(tau) + s2.evaluate(tau), 1e-9);
    }
  }
}

TEST(CfResidual, DecaysLikeInitialMismatch) {
  const double q0 = 1.0;
  const auto params = rc::RCParams::from_rates(1.0, q0);
  const FractionalOrder order{0.5};
  const auto problem = rc::rc_problem(params, order, 20.0);
  const auto grid = UniformGrid::spanning(0.0, 20.0, 20001);
  const auto x = solve_closed_form(problem).sample(grid);
  const auto r = cf_residual(problem, x);
  const double lambda = order.kernel_rate();
  for (std::size_t k = 0; k < grid.size(); k += 500) {
    EXPECT_NEAR(r[k], -q0 * std::exp(-lambda * grid.node(k)), 1e-6) << "tau " << grid.node(k);
  }
  EXPECT_LT(std::abs(r[grid.size() - 1]), 1e-6);
}

}  // namespace
}  // namespace cfrac
