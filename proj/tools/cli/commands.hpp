#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cli/common.hpp"

namespace CLI {
class App;
}

namespace cfrac::cli {

struct DerivativeOptions {
  std::string kernel = "cf";
  double alpha = 0.5;
  std::optional<double> sigma;
  std::string input;
  std::string fn;
  std::string dim = "0";
  GridFlags grid;
  std::string output;
};

struct SolveOptions {
  std::string problem;
  std::size_t steps = 4000;
  double tolerance = 1e-6;
  std::string output;
};

struct RcOptions {
  std::optional<double> resistance;
  std::optional<double> capacitance;
  std::optional<double> v0;
  std::optional<double> gamma;
  std::optional<double> q0;
  std::string alphas = "0.5,0.7,0.9,1.0";
  std::optional<double> t_max;
  std::size_t n = 161;
  std::string quantity = "voltage";
  std::string layout = "long";
  std::size_t workers = 1;
  std::string output;
};

struct VerifyOptions {
  std::string alphas = "0.25,0.5,0.75,1.0";
  std::uint64_t seed = 20240611;
  std::string inject_fault;
};

void add_derivative(CLI::App& app, DerivativeOptions& opts);
void add_solve(CLI::App& app, SolveOptions& opts);
void add_rc(CLI::App& app, RcOptions& opts);
void add_verify(CLI::App& app, VerifyOptions& opts);

int run_derivative(const DerivativeOptions& opts, std::ostream& out);
int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int run_rc(const RcOptions& opts, std::ostream& out);
int run_verify(const VerifyOptions& opts, std::ostream& out);

}  // namespace cfrac::cli
