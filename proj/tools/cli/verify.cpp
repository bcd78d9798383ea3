#include <CLI11.hpp>

#include <ostream>

#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "cli/verify_suite.hpp"

namespace cfrac::cli {

void add_verify(CLI::App& app, VerifyOptions& opts) {
  auto* sub = app.add_subcommand("verify", "Run the property and oracle suite");
  sub->add_option("--alpha", opts.alphas, "Comma-separated orders in (0, 1]")->capture_default_str();
  sub->add_option("--seed", opts.seed, "Seed for randomized property checks")->capture_default_str();
  // Test hook: deliberately miscalibrates the kernel normalization.
  sub->add_option("--inject-fault", opts.inject_fault)
      ->check(CLI::IsMember({"m-scale"}))
      ->group("");
}

int run_verify(const VerifyOptions& opts, std::ostream& out) {
  VerifySettings settings;
  settings.alphas = parse_alpha_list(opts.alphas, "--alpha");
  settings.seed = opts.seed;
  settings.fault_m_scale = opts.inject_fault == "m-scale";

  const std::vector<CheckResult> results = run_verify_suite(settings);
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kVerificationFailed;
}

}  // namespace cfrac::cli
