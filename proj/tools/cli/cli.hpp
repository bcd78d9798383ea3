#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfrac::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kConfigError = 2,
  kDomainError = 3,
  kSingularity = 4,
};

/// Runs the command line `args` (without the program name). CSV goes to the
/// file named by --output (or `out` for "-"); reports go to `out`, errors to
/// `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfrac::cli
