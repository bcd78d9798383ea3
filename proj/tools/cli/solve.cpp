#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cfrac/csv.hpp"
#include "cfrac/errors.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "cli/problem_file.hpp"

namespace cfrac::cli {

void add_solve(CLI::App& app, SolveOptions& opts) {
  auto* sub = app.add_subcommand("solve", "Solve a linear Caputo-Fabrizio problem in dimensionless time");
  sub->add_option("--problem", opts.problem, "Problem file (key = value lines)")->required();
  sub->add_option("--steps", opts.steps, "RK4 steps on [0, tau_max]")->capture_default_str();
  sub->add_option("--tolerance", opts.tolerance,
                  "Largest accepted closed-form vs numeric discrepancy")
      ->capture_default_str();
  sub->add_option("-o,--output", opts.output, "Output CSV ('-' for stdout)");
}

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.steps < 16) throw ConfigError("--steps: need at least 16 steps");
  if (!(opts.tolerance > 0.0) || !std::isfinite(opts.tolerance)) {
    throw ConfigError("--tolerance must be positive");
  }
  const ProblemSpec spec = load_problem(opts.problem);
  const LinearFDEProblem& problem = spec.problem;
  const double alpha = problem.alpha.value();

  const ClosedFormSolution closed = solve_closed_form(problem);
  const SampledFunction numeric = solve_numeric(problem, opts.steps);
  const UniformGrid& grid = numeric.grid();
  const SampledFunction exact = closed.sample(grid);
  const SampledFunction residual = cf_residual(problem, exact);
  const double discrepancy = max_abs_difference(exact, numeric);

  std::vector<double> times;
  if (spec.scale) times = t_of_tau_sorted(*spec.scale, grid.nodes(), problem.alpha);

  Provenance prov{"solve", {}};
  prov.add("problem", opts.problem);
  for (const auto& [k, v] : spec.entries) prov.add(k, v);
  prov.add("steps", std::to_string(opts.steps));
  prov.add("tolerance", opts.tolerance);

  CsvSink sink(opts.output, "solve.csv", out);
  std::ostream& csv_out = sink.stream();
  csv_out << prov.line() << '\n';
  csv_out << (spec.scale ? "tau,t,x,x_numeric,cf_residual\n" : "tau,x,x_numeric,cf_residual\n");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv_out << csv::format_number(grid.node(k)) << ',';
    if (spec.scale) csv_out << csv::format_number(times[k]) << ',';
    csv_out << csv::format_number(exact[k]) << ',' << csv::format_number(numeric[k]) << ','
            << csv::format_number(residual[k]) << '\n';
  }
  csv_out.flush();

  std::ostream& report = sink.to_stdout() ? err : out;
  double tail = 0.0;
  for (std::size_t k = grid.size() / 2; k < grid.size(); ++k) {
    tail = std::max(tail, std::abs(residual[k]));
  }
  report << "problem           " << spec.family << " (alpha = " << param(alpha)
         << ", tau_max = " << param(problem.tau_max) << ")\n"
         << "x(tau_max)        " << csv::format_number(exact[grid.size() - 1]) << '\n'
         << "max |closed - numeric|  " << csv::format_number(discrepancy) << "  (tolerance "
         << param(opts.tolerance) << ")\n"
         << "cf residual |r(0)|      " << csv::format_number(std::abs(residual[0])) << '\n'
         << "cf residual max |r|, tau >= tau_max/2  " << csv::format_number(tail) << '\n';

  if (spec.rc) {
    const double c0 = rc::initial_condition_constant(*spec.rc, problem.alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(exact[k] - rc::charge_tau(*spec.rc, grid.node(k),
                                                                 problem.alpha, c0)));
    }
    report << "max |x - q_rc(tau)|     " << csv::format_number(worst) << '\n';
  }
  if (spec.classical && problem.alpha.is_classical()) {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(exact[k] - classical_solution(*spec.classical, times[k])));
    }
    report << "max |x - classical(t)|  " << csv::format_number(worst) << '\n';
  }
  if (!sink.to_stdout()) out << "wrote " << grid.size() << " rows to " << sink.path() << '\n';

  if (!(discrepancy <= opts.tolerance)) {
    err << "verification failed: closed-form vs numeric discrepancy "
        << csv::format_number(discrepancy) << " exceeds tolerance " << param(opts.tolerance) << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace cfrac::cli
