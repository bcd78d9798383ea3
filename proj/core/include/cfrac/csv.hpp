#pragma once

// CSV exchange. Numbers are written with 15 significant digits; lines
// beginning with '#' are comments.

#include <iosfwd>
#include <string>
#include <vector>

#include "cfrac/curve.hpp"
#include "cfrac/sampled.hpp"

namespace cfrac::csv {

/// "%.15g", with -0 written as 0.
std::string format_number(double v);

/// A header plus numeric rows. Line numbers refer to the source text.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;

  /// Index of a named column; throws ParseError if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
};

/// Parses comma-separated numeric data with a header line. Throws ParseError
/// naming the offending line.
Table read_table(std::istream& in);
Table read_table_file(const std::string& path);

/// Reads a `t,value` file into a SampledFunction; the abscissae must be
/// uniformly spaced (relative tolerance 1e-9).
SampledFunction read_sampled(std::istream& in, DimExpr dim = DimExpr::dimensionless());

void write_sampled(std::ostream& out, const SampledFunction& f,
                   const std::string& abscissa = "t", const std::string& value = "value");

/// Long format: one `abscissa,alpha,value` row per curve sample, curves in
/// order. All curves must share the abscissa and value names.
void write_curves_long(std::ostream& out, const std::vector<Curve>& curves);

/// `abscissa,value` rows of a single curve.
void write_curve(std::ostream& out, const Curve& curve);

}  // namespace cfrac::csv
