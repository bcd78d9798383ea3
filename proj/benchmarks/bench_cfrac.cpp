#include <benchmark/benchmark.h>

#include <cmath>

#include "cfrac/kernel_ops.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cfrac/rescaling.hpp"

namespace {

using namespace cfrac;

SampledFunction test_signal(std::size_t n) {
  return SampledFunction::sample(UniformGrid::spanning(0.0, 5.0, n),
                                 [](double t) { return std::sin(3.0 * t) + 0.2 * t * t; });
}

void BM_CfRecurrence(benchmark::State& state) {
  const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cf_derivative(f, FractionalOrder{0.5}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CfRecurrence)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

void BM_CfDirect(benchmark::State& state) {
  const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cf_derivative_direct(f, FractionalOrder{0.5}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CfDirect)->RangeMultiplier(2)->Range(1 << 8, 1 << 12)->Complexity();

void BM_CaputoL1(benchmark::State& state) {
  const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(caputo_derivative(f, FractionalOrder{0.5}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(2)->Range(1 << 8, 1 << 12)->Complexity();

LinearFDEProblem varying_problem() {
  LinearFDEProblem p;
  p.P = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  p.Q = [](double t) { return std::cos(t); };
  p.alpha = FractionalOrder{0.6};
  p.x0 = 0.3;
  p.tau_max = 10.0;
  return p;
}

void BM_ClosedFormSample(benchmark::State& state) {
  const auto solution = solve_closed_form(varying_problem());
  const auto grid = UniformGrid::spanning(0.0, 10.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solution.sample(grid));
}
BENCHMARK(BM_ClosedFormSample)->Arg(101)->Arg(1001)->Arg(10001);

void BM_NumericRk4(benchmark::State& state) {
  const auto problem = varying_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_numeric(problem, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_NumericRk4)->Arg(400)->Arg(4000)->Arg(40000);

void BM_RcSweep(benchmark::State& state) {
  const auto params = rc::RCParams::from_rates(1.0, 1.0);
  const std::vector<FractionalOrder> alphas = {FractionalOrder{0.5}, FractionalOrder{0.7},
                                               FractionalOrder{0.9}, FractionalOrder{1.0}};
  const auto grid = UniformGrid::spanning(0.0, 8.0, 161);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rc::figure2_curves(params, alphas, grid, rc::Quantity::voltage,
                                                static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_RcSweep)->Arg(1)->Arg(4);

void BM_TabulatedInverse(benchmark::State& state) {
  std::vector<double> t, phi;
  for (int k = 0; k <= 40; ++k) {
    t.push_back(0.1 * k);
    phi.push_back(0.5 + 0.25 * std::tanh(0.1 * k - 1.5));
  }
  const auto scale = TimeScale::tabulated(t, phi);
  const auto taus = UniformGrid::spanning(0.0, 6.0, 4001).nodes();
  for (auto _ : state) benchmark::DoNotOptimize(t_of_tau_sorted(scale, taus, FractionalOrder{1.0}));
}
BENCHMARK(BM_TabulatedInverse);

}  // namespace

BENCHMARK_MAIN();
