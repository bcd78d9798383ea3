#include "cfrac/dims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cfrac/errors.hpp"

namespace cfrac {

namespace {

__extension__ typedef __int128 i128;

std::int64_t checked(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational exponent overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  const i128 g = a == 0 ? 1 : a;
  return Rational{checked(num / g), checked(den / g)};
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const auto p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational{p};
    }
    const std::string lhs = text.substr(0, slash);
    const std::string rhs = text.substr(slash + 1);
    const auto p = std::stoll(lhs, &used);
    if (used != lhs.size()) throw std::invalid_argument(text);
    const auto q = std::stoll(rhs, &used);
    if (used != rhs.size()) throw std::invalid_argument(text);
    return Rational{p, q};
  } catch (const std::logic_error&) {
    throw InputError("not a rational exponent: '" + text + "'");
  }
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(Rational a, Rational b) { return a + (-b); }

Rational operator*(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(Rational a, Rational b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

DimExpr DimExpr::raised_to(const DimExpr& power) const {
  // (r1 + c1 a)(r2 + c2 a) stays linear only if c1 c2 = 0.
  if (depends_on_alpha() && power.depends_on_alpha()) {
    throw DimensionError("exponent " + to_string() + " raised to " + power.to_string() +
                         " is not linear in alpha");
  }
  return {rational_ * power.rational_,
          rational_ * power.alpha_coef_ + alpha_coef_ * power.rational_};
}

std::string DimExpr::to_string() const {
  if (rational_.is_zero() && alpha_coef_.is_zero()) return "1";
  std::string alpha_term;
  if (!alpha_coef_.is_zero()) {
    const Rational mag = alpha_coef_ < Rational{} ? -alpha_coef_ : alpha_coef_;
    alpha_term = mag == Rational{1} ? "alpha" : mag.to_string() + "*alpha";
  }
  if (alpha_coef_.is_zero()) return "s^" + rational_.to_string();
  if (rational_.is_zero()) {
    return alpha_coef_ < Rational{} ? "s^(-" + alpha_term + ")" : "s^(" + alpha_term + ")";
  }
  const char* sign = alpha_coef_ < Rational{} ? " - " : " + ";
  return "s^(" + rational_.to_string() + sign + alpha_term + ")";
}

DimensionedQuantity operator+(const DimensionedQuantity& a, const DimensionedQuantity& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError("cannot add " + a.dim_.to_string() + " and " + b.dim_.to_string());
  }
  return {a.value_ + b.value_, a.dim_};
}

DimensionedQuantity operator-(const DimensionedQuantity& a, const DimensionedQuantity& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError("cannot subtract " + b.dim_.to_string() + " from " +
                         a.dim_.to_string());
  }
  return {a.value_ - b.value_, a.dim_};
}

DimensionedQuantity DimensionedQuantity::pow(const DimExpr& exponent, double alpha) const {
  return {std::pow(value_, exponent.evaluate(alpha)), dim_.raised_to(exponent)};
}

DimExpr dim_of_operator(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::classical_ddt:
      return DimExpr::seconds(-1);
    case OperatorKind::caputo:
      return DimExpr::alpha(Rational{-1});
    case OperatorKind::caputo_fabrizio:
      return DimExpr::dimensionless();
    case OperatorKind::sigma_rescaled_caputo: {
      // sigma^(alpha - 1) applied on top of the Caputo operator.
      const DimExpr sigma_factor = DimExpr::seconds(1).raised_to(DimExpr{Rational{-1}, Rational{1}});
      return sigma_factor + dim_of_operator(OperatorKind::caputo);
    }
    case OperatorKind::phi_rescaled_cf:
      // 1/phi with [phi] = s, times the dimensionless CF operator.
      return -DimExpr::seconds(1) + dim_of_operator(OperatorKind::caputo_fabrizio);
  }
  throw std::logic_error("unknown operator kind");
}

bool check_homogeneity(std::span<const DimExpr> terms) {
  if (terms.empty()) throw std::invalid_argument("check_homogeneity: empty term list");
  return std::all_of(terms.begin(), terms.end(),
                     [&](const DimExpr& d) { return d == terms.front(); });
}

}  // namespace cfrac
