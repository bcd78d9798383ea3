#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cfrac/dims.hpp"

namespace cfrac {

/// A labeled series ready for CSV emission. Rows are strictly increasing in
/// the abscissa.
struct Curve {
  std::string label;
  std::string abscissa_name;
  std::string value_name;
  double alpha = 1.0;
  std::vector<std::pair<double, double>> rows;
  DimExpr dim;

  /// Throws DomainError if the abscissae are not strictly increasing.
  void validate() const;
};

}  // namespace cfrac
