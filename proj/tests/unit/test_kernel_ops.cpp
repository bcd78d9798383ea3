#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cfrac/errors.hpp"
#include "cfrac/kernel_ops.hpp"
#include "support/oracles.hpp"

namespace cfrac {
namespace {

using testing::cf_by_quadrature;
using testing::cf_of_exp;
using testing::cf_of_t;
using testing::cf_of_t2;

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_norm(const SampledFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// The analytic oracles are themselves checked against brute-force quadrature
// before anything is compared with them.
TEST(Oracles, ClosedFormsAgreeWithQuadrature) {
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double t : {0.1, 1.0, 2.5, 5.0}) {
      EXPECT_NEAR(cf_of_t(alpha, t), cf_by_quadrature([](double) { return 1.0; }, alpha, t),
                  1e-12);
      EXPECT_NEAR(cf_of_t2(alpha, t), cf_by_quadrature([](double s) { return 2 * s; }, alpha, t),
                  1e-11);
      EXPECT_NEAR(cf_of_exp(alpha, -1.0, t),
                  cf_by_quadrature([](double s) { return -std::exp(-s); }, alpha, t), 1e-12);
    }
  }
  EXPECT_NEAR(cf_of_t(0.5, 1.0), 1.264241, 5e-7);
}

TEST(CfDerivative, ConstantIsExactlyZero) {
  const auto f = SampledFunction::sample(UniformGrid::spanning(0, 5, 501),
                                         [](double) { return 3.0; });
  for (double alpha : {0.1, 0.7, 0.999, 1.0}) {
    const auto g = cf_derivative(f, FractionalOrder{alpha});
    for (double v : g.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(CfDerivative, LinearFunctionMatchesClosedForm) {
  const auto grid = UniformGrid::spanning(0.0, 5.0, 5001);
  const auto f = SampledFunction::sample(grid, [](double t) { return t; });
  const auto g = cf_derivative(f, FractionalOrder{0.5});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(g[k], cf_of_t(0.5, grid.node(k)), 1e-12);
  }
  EXPECT_NEAR(g[1000], 2.0 * (1.0 - std::exp(-1.0)), 1e-12);  // t = 1
}

TEST(CfDerivative, SecondOrderConvergenceOnSmoothFunction) {
  double prev = 0.0;
  for (std::size_t n : {201u, 401u, 801u}) {
    const auto grid = UniformGrid::spanning(0.0, 2.0, n);
    const auto f = SampledFunction::sample(grid, [](double t) { return std::exp(-t); });
    const auto g = cf_derivative(f, FractionalOrder{0.4});
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(g[k] - cf_of_exp(0.4, -1.0, grid.node(k))));
    }
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.3);
    prev = err;
  }
}

TEST(CfDerivative, AlphaOneIsDiscreteDerivative) {
  const auto grid = UniformGrid::spanning(0.0, 2.0, 201);
  const auto f = SampledFunction::sample(grid, [](double t) { return t * t; });
  const auto g = cf_derivative(f, FractionalOrder{1.0});
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(g[k], 2.0 * grid.node(k), 1e-10);
  EXPECT_EQ(g.dim(), f.dim());
}

TEST(CfDerivative, RejectsShiftedGridAndBadSamples) {
  const auto f = SampledFunction::sample(UniformGrid(1.0, 0.1, 10), [](double t) { return t; });
  EXPECT_THROW(cf_derivative(f, FractionalOrder{0.5}), DomainError);
  const UniformGrid grid(0.0, 0.1, 3);
  EXPECT_THROW(SampledFunction(grid, {0.0, std::nan(""), 1.0}), InputError);
  EXPECT_THROW(SampledFunction(grid, {0.0, 1.0}), InputError);
  EXPECT_THROW(FractionalOrder{0.0}, DomainError);
  EXPECT_THROW(FractionalOrder{1.5}, DomainError);
  EXPECT_THROW(UniformGrid(0.0, 0.1, 1), DomainError);
}

TEST(CfDerivative, LinearityProperty) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(0.2, 4.0);
  std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
  for (int trial = 0; trial < 300; ++trial) {
    const auto grid = UniformGrid::spanning(0.0, 3.0, 301 + 17 * trial);
    const double w1 = freq(rng), w2 = freq(rng), c1 = coef(rng), c2 = coef(rng);
    const auto f = SampledFunction::sample(grid, [&](double t) { return c1 * std::sin(w1 * t); });
    const auto g = SampledFunction::sample(grid, [&](double t) { return c2 * std::cos(w2 * t) + t; });
    const double a = coef(rng), b = coef(rng);
    const FractionalOrder order{alpha_dist(rng)};

    const auto lhs = cf_derivative(linear_combination(a, f, b, g), order);
    const auto df = cf_derivative(f, order);
    const auto dg = cf_derivative(g, order);
    const auto rhs = linear_combination(a, df, b, dg);
    // Rounding in a f + b g telescopes through the slope differences (input
    // magnitude times the prefactor K); combining the outputs adds their own
    // magnitude. Per-step rounding in the recurrence accumulates like a random
    // walk, hence sqrt(n).
    const double magnitude = KernelNormalization::standard().prefactor(order.value()) *
                                 (std::abs(a) * max_norm(f) + std::abs(b) * max_norm(g)) +
                             std::abs(a) * max_norm(df) + std::abs(b) * max_norm(dg);
    const double scale = magnitude * std::sqrt(static_cast<double>(grid.size()));
    EXPECT_LE(max_abs_difference(lhs, rhs), 10.0 * kEps * scale)
        << "trial " << trial;
  }
}

TEST(CfDerivative, ConstantAnnihilationProperty) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> c(-1e6, 1e6);
  std::uniform_real_distribution<double> alpha_dist(1e-3, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double value = c(rng);
    const auto f = SampledFunction::sample(UniformGrid(0.0, 0.01 + trial * 1e-3, 50),
                                           [&](double) { return value; });
    const auto g = cf_derivative(f, FractionalOrder{alpha_dist(rng)});
    for (double v : g.values()) ASSERT_EQ(v, 0.0);
  }
}

TEST(CfDerivative, RecurrenceMatchesDirectSum) {
  const auto grid = UniformGrid::spanning(0.0, 4.0, 2000);
  const auto f = SampledFunction::sample(
      grid, [](double t) { return std::sin(3 * t) + 0.2 * t * t - std::exp(-t); });
  for (double alpha : {0.2, 0.5, 0.9}) {
    const auto fast = cf_derivative(f, FractionalOrder{alpha});
    const auto slow = cf_derivative_direct(f, FractionalOrder{alpha});
    EXPECT_LE(max_abs_difference(fast, slow), 1e-12 * max_norm(slow)) << "alpha " << alpha;
  }
}

TEST(CfDerivative, LimitTowardZeroOrder) {
  const auto grid = UniformGrid::spanning(0.0, 2.0, 2001);
  const auto f = SampledFunction::sample(grid, [](double t) { return std::exp(t); });
  const auto target = cf_limit_alpha_zero(f);
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha : {0.1, 0.01, 0.001}) {
    const double d = max_abs_difference(cf_derivative(f, FractionalOrder{alpha}), target);
    EXPECT_LT(d, prev) << "alpha " << alpha;
    prev = d;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(CfDerivative, LimitTowardClassicalOrder) {
  // f'(0) = 0 so the memory integral has no boundary layer at t = 0.
  const auto grid = UniformGrid::spanning(0.0, 2.0, 20001);
  for (auto fn : {+[](double t) { return t * t; }, +[](double t) { return std::cos(t); }}) {
    const auto f = SampledFunction::sample(grid, fn);
    const auto target = discrete_derivative(f);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {0.9, 0.99, 0.999}) {
      const double d = max_abs_difference(cf_derivative(f, FractionalOrder{alpha}), target);
      EXPECT_LT(d, prev) << "alpha " << alpha;
      prev = d;
    }
    EXPECT_LT(prev, 1e-2);
  }
}

TEST(CfLimitAlphaZero, Examples) {
  const auto grid = UniformGrid::spanning(0.0, 1.0, 11);
  const auto t = cf_limit_alpha_zero(SampledFunction::sample(grid, [](double x) { return x; }));
  const auto c = cf_limit_alpha_zero(SampledFunction::sample(grid, [](double) { return 4.0; }));
  const auto e = cf_limit_alpha_zero(SampledFunction::sample(grid, [](double x) { return std::exp(x); }));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_DOUBLE_EQ(t[k], grid.node(k));
    EXPECT_EQ(c[k], 0.0);
    EXPECT_NEAR(e[k], std::expm1(grid.node(k)), 1e-15);
  }
}

TEST(CaputoDerivative, Examples) {
  const auto grid = UniformGrid::spanning(0.0, 2.0, 401);
  const auto c = caputo_derivative(SampledFunction::sample(grid, [](double) { return 2.0; }),
                                   FractionalOrder{0.5});
  for (double v : c.values()) EXPECT_EQ(v, 0.0);

  // L1 is exact on piecewise-linear input: D^(1/2) t = t^(1/2) / Gamma(3/2) = 2 sqrt(t/pi).
  const auto lin = SampledFunction::sample(grid, [](double t) { return t; });
  const auto half = caputo_derivative(lin, FractionalOrder{0.5});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(half[k], 2.0 * std::sqrt(grid.node(k) / std::numbers::pi), 1e-12);
  }
  const auto one = caputo_derivative(lin, FractionalOrder{1.0});
  for (double v : one.values()) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(CaputoDerivative, L1ConvergesAtOrderTwoMinusAlpha) {
  const double alpha = 0.5;
  auto error = [&](std::size_t n) {
    const auto grid = UniformGrid::spanning(0.0, 1.0, n);
    const auto f = SampledFunction::sample(grid, [](double t) { return t * t; });
    const auto g = caputo_derivative(f, FractionalOrder{alpha});
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double exact = 2.0 * std::pow(grid.node(k), 2.0 - alpha) / std::tgamma(3.0 - alpha);
      err = std::max(err, std::abs(g[k] - exact));
    }
    return err;
  };
  const double rate = std::log2(error(201) / error(401));
  EXPECT_NEAR(rate, 2.0 - alpha, 0.1);
}

TEST(SigmaRescaledCaputo, Examples) {
  const auto grid = UniformGrid::spanning(0.0, 1.0, 101);
  const auto f = SampledFunction::sample(grid, [](double t) { return t * t; });
  const FractionalOrder order{0.3};

  const auto unit = sigma_rescaled_caputo(f, order, {1.0, DimExpr::seconds(1)});
  const auto plain = caputo_derivative(f, order);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_EQ(unit[k], plain[k]);

  const auto classical = sigma_rescaled_caputo(f, FractionalOrder{1.0}, {7.0, DimExpr::seconds(1)});
  EXPECT_LT(max_abs_difference(classical, discrete_derivative(f)), 1e-12);

  const auto two = sigma_rescaled_caputo(f, order, {2.0, DimExpr::seconds(1)});
  EXPECT_EQ(f.dim(), DimExpr::dimensionless());
  EXPECT_EQ(two.dim(), DimExpr::seconds(-1));
  EXPECT_NEAR(two[50], std::pow(2.0, -0.7) * plain[50], 1e-14);

  EXPECT_THROW(sigma_rescaled_caputo(f, order, {0.0, DimExpr::seconds(1)}), DomainError);
  EXPECT_THROW(sigma_rescaled_caputo(f, order, {-1.0, DimExpr::seconds(1)}), DomainError);
  EXPECT_THROW(sigma_rescaled_caputo(f, order, {1.0, DimExpr::dimensionless()}), DimensionError);
}

TEST(DimensionPropagation, PerOperator) {
  const DimExpr d{Rational{2}, Rational{0}};
  const auto f = SampledFunction::sample(UniformGrid::spanning(0, 1, 11),
                                         [](double t) { return t; }, d);
  EXPECT_EQ(cf_derivative(f, FractionalOrder{0.4}).dim(), d);
  EXPECT_EQ(caputo_derivative(f, FractionalOrder{0.4}).dim(), d - DimExpr::alpha());
  EXPECT_EQ(sigma_rescaled_caputo(f, FractionalOrder{0.4}, {3.0, DimExpr::seconds(1)}).dim(),
            d - DimExpr::seconds(1));
}

TEST(LaplaceResidual, Examples) {
  const auto constant = SampledFunction::sample(UniformGrid::spanning(0.0, 30.0, 30001),
                                                [](double) { return 2.5; });
  EXPECT_LT(cf_laplace_residual(constant, FractionalOrder{0.3}, 1.0), 1e-10);

  const auto t = SampledFunction::sample(UniformGrid::spanning(0.0, 30.0, 30001),
                                         [](double x) { return x; });
  EXPECT_LT(cf_laplace_residual(t, FractionalOrder{0.5}, 2.0), 1e-6);

  const auto decay = SampledFunction::sample(UniformGrid::spanning(0.0, 40.0, 40001),
                                             [](double x) { return std::exp(-x); });
  EXPECT_LT(cf_laplace_residual(decay, FractionalOrder{0.4}, 1.5), 1e-6);
}

TEST(LaplaceResidual, DetectsWrongNormalization) {
  const auto t = SampledFunction::sample(UniformGrid::spanning(0.0, 30.0, 30001),
                                         [](double x) { return x; });
  EXPECT_GT(cf_laplace_residual(t, FractionalOrder{0.5}, 2.0, KernelNormalization::scaled(1.01)),
            1e-3);
}

TEST(LaplaceResidual, Errors) {
  const auto t = SampledFunction::sample(UniformGrid::spanning(0.0, 30.0, 3001),
                                         [](double x) { return x; });
  EXPECT_THROW(cf_laplace_residual(t, FractionalOrder{0.5}, 0.0), DomainError);
  EXPECT_THROW(cf_laplace_residual(t, FractionalOrder{0.5}, -1.0), DomainError);
  // exp(-0.1 * 30) * 30 is far above the truncation budget.
  EXPECT_THROW(cf_laplace_residual(t, FractionalOrder{0.5}, 0.1), DomainError);
  EXPECT_NEAR(default_laplace_horizon(2.0), 13.815510557964274, 1e-12);
}

}  // namespace
}  // namespace cfrac
