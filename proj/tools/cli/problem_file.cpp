#include "cli/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "cfrac/csv.hpp"
#include "cfrac/errors.hpp"

namespace cfrac::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

class Entries {
 public:
  void add(const std::string& key, const std::string& value, std::size_t line) {
    if (map_.count(key) != 0) throw ParseError("duplicate key '" + key + "'", line);
    map_.emplace(key, Entry{value, line});
    order_.emplace_back(key, value);
  }

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  const Entry& at(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) throw InputError("problem file: missing key '" + key + "'");
    return it->second;
  }

  std::size_t line(const std::string& key) const { return has(key) ? at(key).line : 0; }

  double number(const std::string& key) const {
    const Entry& e = at(key);
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (e.value.empty() || end != begin + e.value.size() || !std::isfinite(v)) {
      throw ParseError(key + ": not a finite number: '" + e.value + "'", e.line);
    }
    return v;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ParseError(key + " must be positive", line(key));
    return v;
  }

  void restrict_to(const std::set<std::string>& allowed, const std::string& family) const {
    for (const auto& [key, entry] : map_) {
      if (allowed.count(key) == 0) {
        throw ParseError("key '" + key + "' is not valid for coefficients = " + family, entry.line);
      }
    }
  }

  void exclusive(const std::string& a, const std::string& b) const {
    if (has(a) && has(b)) {
      throw ParseError("'" + a + "' and '" + b + "' are mutually exclusive",
                       std::max(line(a), line(b)));
    }
    if (!has(a) && !has(b)) throw InputError("problem file: need '" + a + "' or '" + b + "'");
  }

  const std::vector<std::pair<std::string, std::string>>& ordered() const { return order_; }

 private:
  std::map<std::string, Entry> map_;
  std::vector<std::pair<std::string, std::string>> order_;
};

const std::set<std::string> kKnownKeys = {"coefficients", "alpha", "x0",    "tau_max",
                                          "t_max",        "P",     "Q",     "gamma",
                                          "q0",           "R",     "C",     "V0",
                                          "scale",        "sigma", "scale_file"};

Entries read_entries(std::istream& in) {
  Entries entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (kKnownKeys.count(key) == 0) throw ParseError("unknown key '" + key + "'", line_no);
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);
    entries.add(key, value, line_no);
  }
  return entries;
}

FractionalOrder order_from(const Entries& e) {
  const double alpha = e.number("alpha");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParseError("alpha must lie in (0, 1]", e.line("alpha"));
  }
  return FractionalOrder{alpha};
}

double horizon_from(const Entries& e, const TimeScale* scale, FractionalOrder order) {
  if (scale == nullptr) return e.positive("tau_max");
  e.exclusive("tau_max", "t_max");
  if (e.has("tau_max")) return e.positive("tau_max");
  return tau_of_t(*scale, e.positive("t_max"), order);
}

TimeScale scale_from(const Entries& e, const std::filesystem::path& base_dir) {
  const std::string& name = e.at("scale").value;
  const auto only = [&](const std::string& key) {
    for (const char* other : {"sigma", "gamma", "scale_file"}) {
      if (other != key && e.has(other)) {
        throw ParseError(std::string("'") + other + "' does not apply to scale = " + name,
                         e.line(other));
      }
    }
  };
  if (name == "constant") {
    only("sigma");
    return TimeScale::constant(e.positive("sigma"));
  }
  if (name == "rc-exponential") {
    only("gamma");
    return TimeScale::rc_exponential(e.positive("gamma"));
  }
  if (name == "tabulated") {
    only("scale_file");
    std::filesystem::path file = e.at("scale_file").value;
    if (file.is_relative()) file = base_dir / file;
    const csv::Table table = csv::read_table_file(file.string());
    return TimeScale::tabulated(table.column_values("t"), table.column_values("phi"));
  }
  throw ParseError("unknown scale '" + name + "' (expected constant, rc-exponential or tabulated)",
                   e.line("scale"));
}

}  // namespace

ProblemSpec parse_problem(std::istream& in, const std::filesystem::path& base_dir) {
  const Entries e = read_entries(in);
  ProblemSpec spec;
  spec.family = e.at("coefficients").value;
  spec.entries = e.ordered();

  if (spec.family == "constant") {
    e.restrict_to({"coefficients", "alpha", "x0", "tau_max", "P", "Q"}, spec.family);
    const FractionalOrder order = order_from(e);
    spec.problem = LinearFDEProblem::constant(e.number("P"), e.number("Q"), order,
                                              e.number_or("x0", 0.0), horizon_from(e, nullptr, order));
    return spec;
  }

  if (spec.family == "rc") {
    e.restrict_to({"coefficients", "alpha", "tau_max", "t_max", "gamma", "q0", "R", "C", "V0", "x0"},
                  spec.family);
    if (e.has("x0") && e.number("x0") != 0.0) {
      throw ParseError("the rc problem starts from an uncharged capacitor; x0 must be 0",
                       e.line("x0"));
    }
    const FractionalOrder order = order_from(e);
    if (e.has("gamma")) {
      for (const char* key : {"R", "C", "V0"}) {
        if (e.has(key)) throw ParseError(std::string("'") + key + "' conflicts with 'gamma'", e.line(key));
      }
      spec.rc = rc::RCParams::from_rates(e.positive("gamma"), e.number("q0"));
    } else {
      if (e.has("q0")) throw ParseError("'q0' needs 'gamma'; use V0 with R and C", e.line("q0"));
      spec.rc = rc::RCParams(e.positive("R"), e.positive("C"), e.number("V0"));
    }
    spec.scale = rc::rc_time_scale(*spec.rc);
    spec.problem = rc::rc_problem(*spec.rc, order, horizon_from(e, &*spec.scale, order));
    return spec;
  }

  if (spec.family == "rescaled") {
    e.restrict_to({"coefficients", "alpha", "x0", "tau_max", "t_max", "P", "Q", "scale", "sigma",
                   "gamma", "scale_file"},
                  spec.family);
    const FractionalOrder order = order_from(e);
    spec.scale = scale_from(e, base_dir);
    spec.classical = ClassicalLinearODE{e.number("P"), e.number("Q"), e.number_or("x0", 0.0)};
    spec.problem = rescale_problem(*spec.classical, *spec.scale, order,
                                   horizon_from(e, &*spec.scale, order));
    return spec;
  }

  throw ParseError("unknown coefficients '" + spec.family + "' (expected constant, rc or rescaled)",
                   e.line("coefficients"));
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  try {
    return parse_problem(in, std::filesystem::path(path).parent_path());
  } catch (const ParseError& err) {
    throw InputError(path + ": " + err.what());
  }
}

}  // namespace cfrac::cli
