#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <ostream>

#include "cfrac/csv.hpp"
#include "cfrac/dims.hpp"
#include "cfrac/errors.hpp"
#include "cfrac/kernel_ops.hpp"
#include "cli/commands.hpp"

namespace cfrac::cli {

void add_derivative(CLI::App& app, DerivativeOptions& opts) {
  auto* sub = app.add_subcommand("derivative", "Fractional derivative of a sampled function");
  sub->add_option("--kernel", opts.kernel, "Operator: cf, caputo or sigma-caputo")
      ->check(CLI::IsMember({"cf", "caputo", "sigma-caputo"}))
      ->capture_default_str();
  sub->add_option("--alpha", opts.alpha, "Order alpha in (0, 1]")->capture_default_str();
  sub->add_option("--sigma", opts.sigma, "Time scale sigma in seconds (sigma-caputo only)");
  auto* input = sub->add_option("--input", opts.input, "CSV file with columns t,value");
  auto* fn = sub->add_option("--fn", opts.fn, "Built-in function: const:c, t, t2, exp:k, sin:w");
  input->excludes(fn);
  sub->add_option("--dim", opts.dim, "Time exponent of f, e.g. 0, -1 or 1/2")
      ->capture_default_str();
  sub->add_option("--t0", opts.grid.t0, "First grid node (--fn)")->capture_default_str();
  sub->add_option("--dt", opts.grid.dt, "Grid spacing (--fn)");
  sub->add_option("--t-max", opts.grid.t_max, "Last grid node (--fn, default 5)");
  sub->add_option("--n", opts.grid.n, "Number of grid nodes (--fn, default 5001)");
  sub->add_option("-o,--output", opts.output, "Output CSV ('-' for stdout)");
}

namespace {

// Time exponents of f, of its derivative under the chosen kernel and of
// the classical derivative. `prefix` turns the lines into CSV comments.
void dim_report(std::ostream& out, const char* prefix, const std::string& kernel,
                const DimExpr& f_dim, const DimExpr& d_dim, double alpha) {
  const DimExpr classical = f_dim + dim_of_operator(OperatorKind::classical_ddt);
  const std::array<DimExpr, 2> pair{d_dim, classical};
  out << prefix << "kernel        " << kernel << '\n'
      << prefix << "[f]           " << f_dim.to_string() << '\n'
      << prefix << "[D f]         " << d_dim.to_string() << "  (alpha = " << param(alpha)
      << ": s^" << param(d_dim.evaluate(alpha)) << ")\n"
      << prefix << "[d/dt f]      " << classical.to_string() << '\n'
      << prefix << "matches d/dt  " << (check_homogeneity(pair) ? "yes" : "no") << '\n';
}

}  // namespace

int run_derivative(const DerivativeOptions& opts, std::ostream& out) {
  const FractionalOrder order = checked_order(opts.alpha, "--alpha");
  const bool sigma_kernel = opts.kernel == "sigma-caputo";
  if (sigma_kernel && !opts.sigma) {
    throw ConfigError("--sigma is required for --kernel sigma-caputo");
  }
  if (!sigma_kernel && opts.sigma) {
    throw ConfigError("--sigma only applies to --kernel sigma-caputo");
  }
  if (opts.input.empty() && opts.fn.empty()) throw ConfigError("one of --input or --fn is required");

  DimExpr f_dim;
  try {
    f_dim = DimExpr{Rational::parse(opts.dim)};
  } catch (const InputError& e) {
    throw ConfigError(std::string("--dim: ") + e.what());
  }

  Provenance prov{"derivative", {}};
  prov.add("kernel", opts.kernel);
  prov.add("alpha", opts.alpha);
  if (opts.sigma) prov.add("sigma", *opts.sigma);
  prov.add("dim", f_dim.to_string());

  std::optional<SampledFunction> f;
  if (!opts.input.empty()) {
    if (opts.grid.dt || opts.grid.t_max || opts.grid.n || opts.grid.t0 != 0.0) {
      throw ConfigError("grid flags apply to --fn only; --input supplies its own grid");
    }
    std::ifstream in(opts.input);
    if (!in) throw InputError("cannot open '" + opts.input + "'");
    f = csv::read_sampled(in, f_dim);
    prov.add("input", opts.input);
  } else {
    const UniformGrid grid = opts.grid.resolve(5.0, 5001);
    f = SampledFunction::sample(grid, parse_function_spec(opts.fn), f_dim);
    prov.add("fn", opts.fn);
  }
  prov.add("t0", f->grid().t0());
  prov.add("dt", f->grid().dt());
  prov.add("n", std::to_string(f->size()));

  SampledFunction d = [&] {
    if (opts.kernel == "cf") return cf_derivative(*f, order);
    if (opts.kernel == "caputo") return caputo_derivative(*f, order);
    return sigma_rescaled_caputo(*f, order, DimensionedQuantity{*opts.sigma, DimExpr::seconds(1)});
  }();

  CsvSink sink(opts.output, "derivative.csv", out);
  std::ostream& csv_out = sink.stream();
  csv_out << prov.line() << '\n';
  if (sink.to_stdout()) dim_report(csv_out, "# ", opts.kernel, f->dim(), d.dim(), opts.alpha);
  csv_out << "t,f,derivative\n";
  for (std::size_t k = 0; k < f->size(); ++k) {
    csv_out << csv::format_number(f->grid().node(k)) << ',' << csv::format_number((*f)[k]) << ','
            << csv::format_number(d[k]) << '\n';
  }
  csv_out.flush();
  if (!sink.to_stdout()) {
    dim_report(out, "", opts.kernel, f->dim(), d.dim(), opts.alpha);
    out << "wrote " << f->size() << " rows to " << sink.path() << '\n';
  }
  return 0;
}

}  // namespace cfrac::cli
