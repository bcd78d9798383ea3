// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "cfrac/dims.hpp"
#include "cfrac/kernel_ops.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cfrac/rescaling.hpp"
#include "support/cli_harness.hpp"

namespace {

using namespace cfrac;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double max_norm(const SampledFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// Composite trapezoid, deliberately independent of the library quadrature.
double trapezoid(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.5 * (f(a) + f(b));
  for (int k = 1; k < panels; ++k) sum += f(a + k * h);
  return sum * h;
}

Outcome criterion1() {
  double oracle_gap = 0.0;
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const double lambda = alpha / (1.0 - alpha);
    const double k = 1.0 / (1.0 - alpha);
    const auto oracle = [&](double t) { return (1.0 - std::exp(-lambda * t)) / alpha; };
    for (double t : {0.5, 2.5, 5.0}) {
      const double q = trapezoid([&](double s) { return k * std::exp(-lambda * (t - s)); }, 0.0, t,
                                 200000);
      oracle_gap = std::max(oracle_gap, std::abs(q - oracle(t)));
    }
    const auto f = SampledFunction::sample(UniformGrid::spanning(0.0, 5.0, 10001),
                                           [](double t) { return t; });
    const auto d = cf_derivative(f, FractionalOrder{alpha});
    for (std::size_t i = 0; i < d.size(); ++i) {
      worst = std::max(worst, std::abs(d[i] - oracle(d.grid().node(i))));
    }
  }
  return {oracle_gap < 1e-8 && worst < 1e-6,
          "oracle vs trapezoid " + sci(oracle_gap) + ", max error " + sci(worst) + " < 1e-6"};
}

Outcome criterion2() {
  // Linearity within 10 eps scale.
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(0.2, 4.0);
  std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
  double lin = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto grid = UniformGrid::spanning(0.0, 3.0, 301 + 11 * trial);
    const double w1 = freq(rng), w2 = freq(rng), c1 = coef(rng), c2 = coef(rng);
    const double a = coef(rng), b = coef(rng);
    const FractionalOrder order{alpha_dist(rng)};
    const auto f = SampledFunction::sample(grid, [&](double t) { return c1 * std::sin(w1 * t); });
    const auto g = SampledFunction::sample(grid, [&](double t) { return c2 * std::exp(-w2 * t); });
    const auto df = cf_derivative(f, order);
    const auto dg = cf_derivative(g, order);
    const double diff = max_abs_difference(cf_derivative(linear_combination(a, f, b, g), order),
                                           linear_combination(a, df, b, dg));
    const double scale = (KernelNormalization::standard().prefactor(order.value()) *
                              (std::abs(a) * max_norm(f) + std::abs(b) * max_norm(g)) +
                          std::abs(a) * max_norm(df) + std::abs(b) * max_norm(dg)) *
                         std::sqrt(static_cast<double>(grid.size()));
    lin = std::max(lin, diff / (10.0 * kEps * scale));
  }

  // Constant input gives exactly zero.
  double constant = 0.0;
  for (double alpha : {0.1, 0.5, 0.9, 1.0}) {
    const auto c = SampledFunction::sample(UniformGrid::spanning(0.0, 5.0, 1001),
                                           [](double) { return -7.25; });
    constant = std::max(constant, max_norm(cf_derivative(c, FractionalOrder{alpha})));
  }

  // Monotone convergence toward both order limits.
  bool limits = true;
  {
    const auto f = SampledFunction::sample(UniformGrid::spanning(0.0, 2.0, 2001),
                                           [](double t) { return std::exp(t); });
    const auto target = cf_limit_alpha_zero(f);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {0.1, 0.01, 0.001}) {
      const double d = max_abs_difference(cf_derivative(f, FractionalOrder{alpha}), target);
      limits = limits && d < prev;
      prev = d;
    }
    limits = limits && prev < 1e-2;
  }
  {
    const auto f = SampledFunction::sample(UniformGrid::spanning(0.0, 2.0, 20001),
                                           [](double t) { return t * t; });
    const auto target = discrete_derivative(f);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {0.9, 0.99, 0.999}) {
      const double d = max_abs_difference(cf_derivative(f, FractionalOrder{alpha}), target);
      limits = limits && d < prev;
      prev = d;
    }
    limits = limits && prev < 1e-2;
  }

  // Laplace residual for f = t (s = 2) and f = exp(-t) (s = 1.5).
  double laplace = 0.0;
  const auto ft = SampledFunction::sample(UniformGrid::spanning(0.0, 30.0, 30001),
                                          [](double t) { return t; });
  const auto fe = SampledFunction::sample(UniformGrid::spanning(0.0, 40.0, 40001),
                                          [](double t) { return std::exp(-t); });
  for (double alpha : {0.25, 0.5, 0.75}) {
    laplace = std::max(laplace, cf_laplace_residual(ft, FractionalOrder{alpha}, 2.0));
    laplace = std::max(laplace, cf_laplace_residual(fe, FractionalOrder{alpha}, 1.5));
  }

  const bool ok = lin <= 1.0 && constant == 0.0 && limits && laplace < 1e-6;
  return {ok, "linearity " + sci(lin) + " of 10 eps scale, constant " + sci(constant) +
                  ", limits " + (limits ? "monotone" : "NOT monotone") + ", laplace " +
                  sci(laplace) + " < 1e-6"};
}

Outcome criterion3() {
  const FractionalOrder order{0.5};
  const auto f = SampledFunction::sample(UniformGrid::spanning(0.0, 5.0, 2000),
                                         [](double t) { return std::sin(2 * t) + t * t / 3; });
  const auto fast = cf_derivative(f, order);
  const auto direct = cf_derivative_direct(f, order);
  const double rel = max_abs_difference(fast, direct) / max_norm(direct);
  return {rel < 1e-12, "relative difference " + sci(rel) + " < 1e-12"};
}

Outcome criterion4() {
  const FractionalOrder order{0.6};
  const auto problem = LinearFDEProblem::constant(1.0, 1.0, order, 0.0, 5.0);
  const auto exact = [](double tau) { return 1.0 - std::exp(-0.6 * tau / 1.4); };
  const auto error_of = [&](const SampledFunction& x) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      m = std::max(m, std::abs(x[k] - exact(x.grid().node(k))));
    }
    return m;
  };
  const auto numeric = solve_numeric(problem, 4000);
  const double e_closed = error_of(solve_closed_form(problem).sample(numeric.grid()));
  const double e_numeric = error_of(numeric);
  const double ratio = error_of(solve_numeric(problem, 20)) / error_of(solve_numeric(problem, 40));
  const bool ok = e_closed < 1e-6 && e_numeric < 1e-6 && ratio >= 12.0 && ratio <= 20.0;
  return {ok, "closed " + sci(e_closed) + ", numeric " + sci(e_numeric) +
                  " < 1e-6, step-doubling ratio " + sci(ratio)};
}

Outcome criterion5() {
  const auto params = rc::RCParams::from_rates(1.0, 1.0);
  bool origin = true;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    origin = origin && rc::charge_t(params, 0.0, FractionalOrder{alpha}) == 0.0;
  }
  double classical = 0.0;
  for (int k = 0; k <= 800; ++k) {
    const double t = 0.01 * k;
    classical = std::max(classical, std::abs(rc::charge_t(params, t, FractionalOrder{1.0}) -
                                             (1.0 - std::exp(-t))));
  }
  double e_closed = 0.0;
  double e_numeric = 0.0;
  for (double alpha : {0.5, 0.7, 0.9}) {
    const FractionalOrder order{alpha};
    const TimeScale scale = TimeScale::rc_exponential(params.gamma());
    const double tau_max = tau_of_t(scale, 8.0, order);
    const auto problem =
        rescale_problem({params.gamma(), params.gamma() * params.q0(), 0.0}, scale, order, tau_max);
    const auto numeric = solve_numeric(problem, 4000);
    const auto closed = solve_closed_form(problem).sample(numeric.grid());
    const auto times = t_of_tau_sorted(scale, numeric.grid().nodes(), order);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double q = rc::charge_t(params, times[k], order);
      e_closed = std::max(e_closed, std::abs(closed[k] - q));
      e_numeric = std::max(e_numeric, std::abs(numeric[k] - q));
    }
  }
  const bool ok = origin && classical <= 2 * kEps && e_closed < 1e-8 && e_numeric < 1e-6;
  return {ok, std::string("q(0) ") + (origin ? "= 0" : "!= 0") + ", alpha = 1 gap " +
                  sci(classical) + ", pipeline " + sci(e_closed) + " < 1e-8, numeric " +
                  sci(e_numeric) + " < 1e-6"};
}

Outcome criterion6() {
  double round_trip = 0.0;
  double slope = 0.0;
  for (double gamma : {1.0, 2.5}) {
    const TimeScale scale = TimeScale::rc_exponential(gamma);
    for (double alpha : {0.3, 0.6, 0.9}) {
      const FractionalOrder order{alpha};
      for (int k = 0; k < 100; ++k) {
        const double t = std::pow(10.0, -3.0 + 4.0 * k / 99.0) / gamma;
        round_trip =
            std::max(round_trip, std::abs(t_of_tau(scale, tau_of_t(scale, t, order), order) - t));
        const double h = 1e-5 * t;
        const double fd = (tau_of_t(scale, t + h, order) - tau_of_t(scale, t - h, order)) / (2 * h);
        const double expected = 1.0 / scale.phi(t, order);
        slope = std::max(slope, std::abs(fd - expected) / expected);
      }
    }
  }
  return {round_trip < 1e-9 && slope < 1e-6,
          "round trip " + sci(round_trip) + " < 1e-9, d tau/dt vs 1/phi " + sci(slope) + " < 1e-6"};
}

Outcome criterion7() {
  const DimExpr x = DimExpr::dimensionless();
  const DimExpr sigma_pow = DimExpr::seconds(1).raised_to(DimExpr{Rational{-1}, Rational{1}});
  const DimExpr sigma_rule = sigma_pow + dim_of_operator(OperatorKind::caputo) + x;
  const bool sigma_ok = sigma_rule == DimExpr::seconds(-1) &&
                        dim_of_operator(OperatorKind::sigma_rescaled_caputo) == DimExpr::seconds(-1);
  const bool cf_ok = dim_of_operator(OperatorKind::caputo_fabrizio) == DimExpr::dimensionless();
  const auto terms = rescaled_equation_term_dims();
  bool terms_ok = !terms.empty();
  for (const DimExpr& d : terms) terms_ok = terms_ok && d == DimExpr::dimensionless();
  return {sigma_ok && cf_ok && terms_ok,
          "sigma rule " + sigma_rule.to_string() + ", cf operator " +
              dim_of_operator(OperatorKind::caputo_fabrizio).to_string() + ", rescaled terms " +
              (terms_ok ? "all 1" : "mixed")};
}

Outcome criterion8() {
  const double q0 = 1.0;
  const auto params = rc::RCParams::from_rates(1.0, q0);
  const FractionalOrder order{0.5};
  const auto problem = rc::rc_problem(params, order, 40.0);
  const auto x = solve_closed_form(problem).sample(UniformGrid::spanning(0.0, 40.0, 40001));
  const auto r = cf_residual(problem, x);
  double tail = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r.grid().node(k) >= 20.0) tail = std::max(tail, std::abs(r[k]));
  }
  const double r0 = std::abs(r[0]);
  return {std::abs(r0 - q0) <= 1e-12 * q0 && tail < 1e-3 * q0,
          "|r(0)| = " + sci(r0) + " (q0 = 1), max |r| for tau >= 20: " + sci(tail) + " < 1e-3"};
}

Outcome criterion9() {
  // Two separate processes of the real executable, same configuration.
  const auto dir = testing::scratch_dir("acceptance_determinism");
  const std::string tool = CFRAC_TOOL_PATH;
  const auto run = [&](const std::filesystem::path& out) {
    const std::string cmd = "\"" + tool + "\" rc --alpha 0.25,0.5,0.7,0.9,1 --n 401 -o \"" +
                            out.string() + "\" > \"" + (dir / "report.txt").string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  const int ca = run(dir / "first.csv");
  const int cb = run(dir / "second.csv");
  const std::string ta = testing::slurp(dir / "first.csv");
  const std::string tb = testing::slurp(dir / "second.csv");
  const bool ok = ca == 0 && cb == 0 && !ta.empty() && ta == tb;
  return {ok, std::to_string(ta.size()) + " bytes, " + (ta == tb ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, Outcome (*)()>, 9> criteria{{
      {"CF derivative of f = t matches the analytic oracle", criterion1},
      {"operator properties (linearity, constants, limits, Laplace)", criterion2},
      {"O(n) recurrence equals O(n^2) direct sum", criterion3},
      {"solver oracle agreement and fourth-order convergence", criterion4},
      {"RC closed form, classical branch and solver pipeline", criterion5},
      {"tau transform round trip and slope", criterion6},
      {"dimensional homogeneity (symbolic in alpha)", criterion7},
      {"CF residual of the RC solution", criterion8},
      {"rc output is byte-identical across runs", criterion9},
  }};
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("criterion %zu: %s  %s  (%s)\n", i + 1, o.passed ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), seconds);
  return failed == 0 ? 0 : 1;
}
