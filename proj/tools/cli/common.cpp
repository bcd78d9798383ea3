#include "cli/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace cfrac::cli {

std::string param(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string Provenance::line() const {
  std::string s = "# cfrac ";
  s += kVersion;
  s += ' ';
  s += subcommand;
  for (const auto& [k, v] : params) {
    s += ' ';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

std::string resolve_output_path(const std::string& flag, const std::string& default_name) {
  if (!flag.empty()) return flag;
  const char* dir = std::getenv(kOutputDirEnv);
  const std::filesystem::path base = (dir != nullptr && *dir != '\0') ? dir : ".";
  return (base / default_name).string();
}

CsvSink::CsvSink(const std::string& flag, const std::string& default_name,
                 std::ostream& stdout_stream)
    : stream_(&stdout_stream) {
  if (flag == "-") {
    path_ = "-";
    return;
  }
  path_ = resolve_output_path(flag, default_name);
  const std::filesystem::path p(path_);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  file_ = std::make_unique<std::ofstream>(path_, std::ios::binary | std::ios::trunc);
  if (!*file_) throw ConfigError("cannot open output file '" + path_ + "'");
  stream_ = file_.get();
}

FractionalOrder checked_order(double alpha, const std::string& flag) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError(flag + ": alpha must lie in (0, 1], got " + param(alpha));
  }
  return FractionalOrder{alpha};
}

std::vector<FractionalOrder> parse_alpha_list(const std::string& text, const std::string& flag) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<FractionalOrder> out;
  std::string item;
  while (in >> item) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ConfigError(flag + ": not a number: '" + item + "'");
    }
    out.push_back(checked_order(v, flag));
  }
  if (out.empty()) throw ConfigError(flag + ": expected at least one alpha value");
  return out;
}

namespace {

double spec_argument(const std::string& spec, std::size_t colon) {
  const std::string arg = spec.substr(colon + 1);
  double v = 0.0;
  const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  if (arg.empty() || res.ec != std::errc() || res.ptr != arg.data() + arg.size() ||
      !std::isfinite(v)) {
    throw ConfigError("--fn: bad argument in '" + spec + "'");
  }
  return v;
}

}  // namespace

std::function<double(double)> parse_function_spec(const std::string& spec) {
  if (spec == "t") return [](double t) { return t; };
  if (spec == "t2") return [](double t) { return t * t; };
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (colon != std::string::npos) {
    const double a = spec_argument(spec, colon);
    if (head == "const") return [a](double) { return a; };
    if (head == "exp") return [a](double t) { return std::exp(a * t); };
    if (head == "sin") return [a](double t) { return std::sin(a * t); };
  }
  throw ConfigError("--fn: unknown function '" + spec +
                    "' (expected const:c, t, t2, exp:k or sin:w)");
}

UniformGrid GridFlags::resolve(double default_t_max, std::size_t default_n) const {
  const std::size_t count = n.value_or(default_n);
  if (count < 2) throw ConfigError("--n: need at least 2 grid points");
  if (dt && t_max) throw ConfigError("--dt and --t-max are mutually exclusive");
  if (!std::isfinite(t0)) throw ConfigError("--t0 must be finite");
  if (dt) {
    if (!(*dt > 0.0) || !std::isfinite(*dt)) throw ConfigError("--dt must be positive");
    return UniformGrid(t0, *dt, count);
  }
  const double hi = t_max.value_or(default_t_max);
  if (!(hi > t0) || !std::isfinite(hi)) throw ConfigError("--t-max must exceed --t0");
  return UniformGrid::spanning(t0, hi, count);
}

}  // namespace cfrac::cli
