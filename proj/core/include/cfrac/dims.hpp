#pragma once

// Time-exponent bookkeeping. Only the exponent of seconds is tracked; the
// order alpha stays a free symbol so that "homogeneous for every alpha" is a
// single equality test rather than a sweep.

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace cfrac {

/// Reduced rational number p/q with q >= 1.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_zero() const noexcept { return num_ == 0; }

  /// Parses "p" or "p/q".
  static Rational parse(const std::string& text);
  std::string to_string() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }
  friend bool operator==(Rational, Rational) = default;
  friend std::strong_ordering operator<=>(Rational a, Rational b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

using TimeExponent = Rational;

/// Time exponent of the form r + c*alpha with alpha symbolic.
class DimExpr {
 public:
  constexpr DimExpr() = default;
  DimExpr(TimeExponent rational_part, Rational alpha_coefficient = Rational{})
      : rational_(rational_part), alpha_coef_(alpha_coefficient) {}

  static DimExpr dimensionless() { return {}; }
  static DimExpr seconds(std::int64_t power = 1) { return {Rational{power}}; }
  /// c * alpha
  static DimExpr alpha(Rational coefficient = Rational{1}) {
    return {Rational{}, coefficient};
  }

  TimeExponent rational_part() const noexcept { return rational_; }
  Rational alpha_coefficient() const noexcept { return alpha_coef_; }
  bool depends_on_alpha() const noexcept { return !alpha_coef_.is_zero(); }

  /// Numeric exponent at a particular order.
  double evaluate(double alpha) const noexcept {
    return rational_.to_double() + alpha_coef_.to_double() * alpha;
  }

  /// Dimension of a product of quantities.
  friend DimExpr operator+(const DimExpr& a, const DimExpr& b) {
    return {a.rational_ + b.rational_, a.alpha_coef_ + b.alpha_coef_};
  }
  /// Dimension of a quotient.
  friend DimExpr operator-(const DimExpr& a, const DimExpr& b) {
    return {a.rational_ - b.rational_, a.alpha_coef_ - b.alpha_coef_};
  }
  friend DimExpr operator-(const DimExpr& a) { return {-a.rational_, -a.alpha_coef_}; }
  friend DimExpr operator*(Rational k, const DimExpr& a) {
    return {k * a.rational_, k * a.alpha_coef_};
  }
  friend bool operator==(const DimExpr&, const DimExpr&) = default;

  /// Exponent of q^p where q carries this dimension and p is itself a
  /// (possibly alpha-dependent) exponent. Throws DimensionError when the
  /// result would be nonlinear in alpha.
  DimExpr raised_to(const DimExpr& power) const;

  /// Human-readable exponent, e.g. "s^-1", "s^(1 - alpha)", "1".
  std::string to_string() const;

 private:
  TimeExponent rational_{};
  Rational alpha_coef_{};
};

/// A real value tagged with its time exponent.
class DimensionedQuantity {
 public:
  DimensionedQuantity(double value, DimExpr dim) : value_(value), dim_(dim) {}

  double value() const noexcept { return value_; }
  const DimExpr& dim() const noexcept { return dim_; }

  /// Throws DimensionError unless the dimensions match symbolically.
  friend DimensionedQuantity operator+(const DimensionedQuantity& a,
                                       const DimensionedQuantity& b);
  friend DimensionedQuantity operator-(const DimensionedQuantity& a,
                                       const DimensionedQuantity& b);
  friend DimensionedQuantity operator*(const DimensionedQuantity& a,
                                       const DimensionedQuantity& b) {
    return {a.value_ * b.value_, a.dim_ + b.dim_};
  }
  friend DimensionedQuantity operator/(const DimensionedQuantity& a,
                                       const DimensionedQuantity& b) {
    return {a.value_ / b.value_, a.dim_ - b.dim_};
  }

  /// value^exponent with the symbolic exponent evaluated at `alpha`.
  DimensionedQuantity pow(const DimExpr& exponent, double alpha) const;

 private:
  double value_;
  DimExpr dim_;
};

enum class OperatorKind {
  classical_ddt,
  caputo,
  caputo_fabrizio,
  sigma_rescaled_caputo,
  phi_rescaled_cf,
};

/// Time exponent contributed by applying the operator to a quantity.
DimExpr dim_of_operator(OperatorKind kind);

/// True iff every term has the same symbolic dimension. Throws
/// std::invalid_argument on an empty list.
bool check_homogeneity(std::span<const DimExpr> terms);

}  // namespace cfrac
