#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfrac/sampled.hpp"

namespace cfrac::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifySettings {
  std::vector<FractionalOrder> alphas;
  std::uint64_t seed = 20240611;
  /// Multiplies M(alpha) by 1.01 in the oracle and Laplace checks.
  bool fault_m_scale = false;
};

/// Runs every check; failures are recorded, never thrown.
std::vector<CheckResult> run_verify_suite(const VerifySettings& settings);

}  // namespace cfrac::cli
