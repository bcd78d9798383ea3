#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfrac/sampled.hpp"

namespace cfrac::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "CFRAC_OUTPUT_DIR";

/// Invalid or inconsistent command-line / config-file settings (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip text for a parameter value.
std::string param(double v);

/// Comment line "# cfrac <version> <subcommand> key=value ..." heading every CSV.
struct Provenance {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;

  void add(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value) { add(std::move(key), param(value)); }
  std::string line() const;
};

/// Destination for CSV text: a file, or the report stream for "-".
class CsvSink {
 public:
  /// `flag` empty selects $CFRAC_OUTPUT_DIR/<default_name> (or ./<default_name>).
  CsvSink(const std::string& flag, const std::string& default_name, std::ostream& stdout_stream);

  std::ostream& stream() { return *stream_; }
  bool to_stdout() const noexcept { return file_ == nullptr; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

/// Output path for a flag value; empty selects the default directory.
std::string resolve_output_path(const std::string& flag, const std::string& default_name);

/// Checks 0 < alpha <= 1; ConfigError otherwise.
FractionalOrder checked_order(double alpha, const std::string& flag);

/// Parses "0.5,0.7,1" (commas or whitespace); ConfigError on bad entries.
std::vector<FractionalOrder> parse_alpha_list(const std::string& text, const std::string& flag);

/// Built-in test function: const:c, t, t2, exp:k, sin:w.
std::function<double(double)> parse_function_spec(const std::string& spec);

/// (t0, dt, n) or (t0, t_max, n) from optional flags.
struct GridFlags {
  double t0 = 0.0;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<std::size_t> n;

  UniformGrid resolve(double default_t_max, std::size_t default_n) const;
};

}  // namespace cfrac::cli
