#include "cfrac/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cfrac/errors.hpp"

namespace cfrac {

void Curve::validate() const {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!(rows[k].first > rows[k - 1].first)) {
      throw DomainError("curve '" + label + "': abscissae not strictly increasing at row " +
                        std::to_string(k + 1));
    }
  }
}

namespace csv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t line) {
  if (cell.empty()) throw ParseError("empty numeric field", line);
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + cell.size()) throw ParseError("not a number: '" + cell + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + cell + "'", line);
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ParseError("missing column '" + name + "'", 0);
  return static_cast<std::size_t>(std::distance(columns.begin(), it));
}

std::vector<double> Table::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split(t);
    if (!have_header) {
      table.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw ParseError("expected " + std::to_string(table.columns.size()) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no);
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, line_no));
    table.rows.push_back(std::move(row));
    table.row_lines.push_back(line_no);
  }
  if (!have_header) throw ParseError("missing header line", line_no);
  return table;
}

Table read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_table(in);
}

SampledFunction read_sampled(std::istream& in, DimExpr dim) {
  const Table table = read_table(in);
  const std::size_t tc = table.column("t");
  const std::size_t vc = table.column("value");
  if (table.rows.size() < 2) throw ParseError("need at least two samples", 0);
  const double t0 = table.rows[0][tc];
  const double dt = table.rows[1][tc] - t0;
  if (!(dt > 0.0)) throw ParseError("t must be strictly increasing", table.row_lines[1]);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const double expected = t0 + static_cast<double>(k) * dt;
    const double t = table.rows[k][tc];
    if (std::abs(t - expected) > 1e-9 * std::max(std::abs(expected), dt)) {
      throw ParseError("t is not on a uniform grid (expected " + format_number(expected) + ")",
                       table.row_lines[k]);
    }
    values.push_back(table.rows[k][vc]);
  }
  return {UniformGrid(t0, dt, values.size()), std::move(values), dim};
}

void write_sampled(std::ostream& out, const SampledFunction& f, const std::string& abscissa,
                   const std::string& value) {
  out << abscissa << ',' << value << '\n';
  for (std::size_t k = 0; k < f.size(); ++k) {
    out << format_number(f.grid().node(k)) << ',' << format_number(f[k]) << '\n';
  }
}

void write_curves_long(std::ostream& out, const std::vector<Curve>& curves) {
  if (curves.empty()) return;
  const auto& first = curves.front();
  for (const auto& c : curves) {
    if (c.abscissa_name != first.abscissa_name || c.value_name != first.value_name) {
      throw DomainError("write_curves_long: curves have different column names");
    }
    c.validate();
  }
  out << first.abscissa_name << ",alpha," << first.value_name << '\n';
  for (const auto& c : curves) {
    const std::string a = format_number(c.alpha);
    for (const auto& [x, y] : c.rows) {
      out << format_number(x) << ',' << a << ',' << format_number(y) << '\n';
    }
  }
}

void write_curve(std::ostream& out, const Curve& curve) {
  curve.validate();
  out << curve.abscissa_name << ',' << curve.value_name << '\n';
  for (const auto& [x, y] : curve.rows) {
    out << format_number(x) << ',' << format_number(y) << '\n';
  }
}

}  // namespace csv
}  // namespace cfrac
