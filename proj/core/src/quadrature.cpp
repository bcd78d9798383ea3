#include "cfrac/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cfrac::quad {

namespace {

constexpr unsigned kMaxDepth = 18;
constexpr std::size_t kFallbackPanels = 1u << 14;

double simpson_fallback(const std::function<double(double)>& f, double a, double b) {
  std::vector<double> y(kFallbackPanels + 1);
  const double h = (b - a) / static_cast<double>(kFallbackPanels);
  for (std::size_t k = 0; k <= kFallbackPanels; ++k) y[k] = f(a + static_cast<double>(k) * h);
  return simpson(y, h);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, rel_tol);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Integrate over [0, 1] and rescale: Boost compares an unscaled error
  // estimate against a scaled tolerance, which forces full-depth recursion on
  // very short intervals.
  const double width = b - a;
  double error = 0.0;
  double l1 = 0.0;
  const double unit = GK::integrate([&](double x) { return f(a + width * x); }, 0.0, 1.0,
                                    kMaxDepth, rel_tol, &error, &l1);
  if (std::isfinite(unit) && error <= rel_tol * std::max(l1, 1e-300) * 10.0) return unit * width;
  return simpson_fallback(f, a, b);
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  const std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals;  // index of the last node covered by 1/3 rule
  double tail = 0.0;
  if (intervals % 2 == 1) {
    if (intervals == 1) return 0.5 * h * (y[0] + y[1]);
    simpson_end = intervals - 3;
    tail = 3.0 * h / 8.0 *
           (y[simpson_end] + 3.0 * y[simpson_end + 1] + 3.0 * y[simpson_end + 2] +
            y[simpson_end + 3]);
  }
  double sum = 0.0;
  if (simpson_end > 0) {
    sum = y[0] + y[simpson_end];
    for (std::size_t k = 1; k < simpson_end; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * y[k];
    sum *= h / 3.0;
  }
  return sum + tail;
}

}  // namespace cfrac::quad
