#pragma once

// Problem files for `cfrac solve`: one `key = value` per line, '#' starts a
// comment. The `coefficients` key selects the problem family:
//
//   constant   P, Q, x0, tau_max
//   rc         gamma + q0, or R + C + V0; tau_max or t_max
//   rescaled   P, Q (classical units), x0, scale = constant | rc-exponential |
//              tabulated with sigma, gamma or scale_file; tau_max or t_max
//
// Every family needs alpha in (0, 1].

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cfrac/rescaling.hpp"

namespace cfrac::cli {

struct ProblemSpec {
  std::string family;
  LinearFDEProblem problem;
  /// Present for rc and rescaled problems.
  std::optional<TimeScale> scale;
  std::optional<rc::RCParams> rc;
  std::optional<ClassicalLinearODE> classical;
  /// Entries in file order, for provenance.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Throws ParseError (with line number) on malformed or invalid entries and
/// InputError when a required key is missing.
ProblemSpec parse_problem(std::istream& in, const std::filesystem::path& base_dir);
ProblemSpec load_problem(const std::string& path);

}  // namespace cfrac::cli
