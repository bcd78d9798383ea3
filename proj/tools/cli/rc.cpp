#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <ostream>

#include "cfrac/csv.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cli/commands.hpp"

namespace cfrac::cli {

void add_rc(CLI::App& app, RcOptions& opts) {
  auto* sub = app.add_subcommand("rc", "Fractional RC charging curves for a sweep of orders");
  auto* r = sub->add_option("--R", opts.resistance, "Resistance in ohms");
  auto* c = sub->add_option("--C", opts.capacitance, "Capacitance in farads");
  auto* v0 = sub->add_option("--V0", opts.v0, "Source voltage in volts (with --R and --C)");
  auto* gamma = sub->add_option("--gamma", opts.gamma, "Rate 1/(RC) in 1/s (default 1)");
  auto* q0 = sub->add_option("--q0", opts.q0, "Asymptotic charge with --gamma (default 1)");
  gamma->excludes(r)->excludes(c)->excludes(v0);
  q0->excludes(r)->excludes(c)->excludes(v0);
  sub->add_option("--alpha", opts.alphas, "Comma-separated orders in (0, 1]")->capture_default_str();
  sub->add_option("--t-max", opts.t_max, "End of the time grid in seconds (default 8/gamma)");
  sub->add_option("--n", opts.n, "Number of time nodes")->capture_default_str();
  sub->add_option("--quantity", opts.quantity, "voltage or charge")
      ->check(CLI::IsMember({"voltage", "charge"}))
      ->capture_default_str();
  sub->add_option("--layout", opts.layout, "long (one file) or per-alpha (one file per order)")
      ->check(CLI::IsMember({"long", "per-alpha"}))
      ->capture_default_str();
  sub->add_option("--workers", opts.workers, "Curves evaluated concurrently")->capture_default_str();
  sub->add_option("-o,--output", opts.output, "Output CSV ('-' for stdout)");
}

namespace {

rc::RCParams params_from(const RcOptions& opts) {
  if (opts.resistance || opts.capacitance || opts.v0) {
    if (!opts.resistance || !opts.capacitance) throw ConfigError("--R and --C must be given together");
    if (!(*opts.resistance > 0.0) || !(*opts.capacitance > 0.0)) {
      throw ConfigError("--R and --C must be positive");
    }
    return rc::RCParams(*opts.resistance, *opts.capacitance, opts.v0.value_or(1.0));
  }
  const double gamma = opts.gamma.value_or(1.0);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("--gamma must be positive");
  return rc::RCParams::from_rates(gamma, opts.q0.value_or(1.0));
}

std::string per_alpha_path(const std::string& base, const Curve& curve) {
  const std::filesystem::path p(base);
  const std::string name = p.stem().string() + "_alpha" + param(curve.alpha) + ".csv";
  return (p.parent_path() / name).string();
}

}  // namespace

int run_rc(const RcOptions& opts, std::ostream& out) {
  const rc::RCParams params = params_from(opts);
  const std::vector<FractionalOrder> alphas = parse_alpha_list(opts.alphas, "--alpha");
  if (opts.n < 2) throw ConfigError("--n: need at least 2 time nodes");
  if (opts.workers < 1) throw ConfigError("--workers must be at least 1");
  const double t_max = opts.t_max.value_or(8.0 / params.gamma());
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("--t-max must be positive");

  const UniformGrid grid = UniformGrid::spanning(0.0, t_max, opts.n);
  const rc::Quantity quantity =
      opts.quantity == "charge" ? rc::Quantity::charge : rc::Quantity::voltage;
  const std::vector<Curve> curves = rc::figure2_curves(params, alphas, grid, quantity, opts.workers);

  Provenance prov{"rc", {}};
  prov.add("R", params.resistance());
  prov.add("C", params.capacitance());
  prov.add("V0", params.v0());
  prov.add("gamma", params.gamma());
  prov.add("q0", params.q0());
  std::string alpha_list;
  for (const FractionalOrder& a : alphas) {
    alpha_list += (alpha_list.empty() ? "" : ",") + param(a.value());
  }
  prov.add("alpha", alpha_list);
  prov.add("t_max", t_max);
  prov.add("n", std::to_string(opts.n));
  prov.add("quantity", opts.quantity);
  prov.add("layout", opts.layout);

  std::vector<std::string> written;
  if (opts.layout == "long") {
    CsvSink sink(opts.output, "rc.csv", out);
    sink.stream() << prov.line() << '\n';
    csv::write_curves_long(sink.stream(), curves);
    sink.stream().flush();
    if (sink.to_stdout()) return 0;
    written.push_back(sink.path());
  } else {
    if (opts.output == "-") throw ConfigError("--layout per-alpha writes files; '-' is not allowed");
    const std::string base = resolve_output_path(opts.output, "rc.csv");
    for (const Curve& curve : curves) {
      CsvSink sink(per_alpha_path(base, curve), "rc.csv", out);
      sink.stream() << prov.line() << " curve_alpha=" << param(curve.alpha) << '\n';
      csv::write_curve(sink.stream(), curve);
      sink.stream().flush();
      written.push_back(sink.path());
    }
  }

  const double scale = quantity == rc::Quantity::voltage ? params.v0() : params.q0();
  const char* unit = quantity == rc::Quantity::voltage ? "V0" : "q0";
  out << "Gamma = " << param(params.gamma()) << " 1/s, t_max = " << param(t_max) << " s ("
      << param(params.gamma() * t_max) << "/Gamma), " << opts.n << " nodes\n";
  for (const Curve& curve : curves) {
    const double last = curve.rows.back().second;
    out << curve.label << "  final " << curve.value_name << " = "
        << csv::format_number(last);
    if (scale != 0.0) out << "  (" << csv::format_number(last / scale) << " " << unit << ")";
    out << '\n';
  }
  for (const std::string& path : written) out << "wrote " << path << '\n';
  return 0;
}

}  // namespace cfrac::cli
