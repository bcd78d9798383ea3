#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "cfrac/errors.hpp"
#include "cli/commands.hpp"

namespace cfrac::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caputo-Fabrizio fractional derivatives, dimensionless-time solvers and the "
               "fractional RC circuit",
               "cfrac"};
  app.set_version_flag("--version", std::string("cfrac ") + kVersion);
  app.set_config("--config", "", "Read options from a TOML or INI file");
  app.require_subcommand(1);

  DerivativeOptions derivative;
  SolveOptions solve;
  RcOptions rc;
  VerifyOptions verify;
  add_derivative(app, derivative);
  add_solve(app, solve);
  add_rc(app, rc);
  add_verify(app, verify);

  try {
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "derivative") return run_derivative(derivative, out);
    if (name == "solve") return run_solve(solve, out, err);
    if (name == "rc") return run_rc(rc, out);
    return run_verify(verify, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    err << "singularity at tau = " << param(e.location()) << '\n';
    return kSingularity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace cfrac::cli
