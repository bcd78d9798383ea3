#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfrac {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data (bad samples, unparsable files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Unparsable text input; carries the 1-based line number (0 if unknown).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Additive combination of quantities whose time exponents differ.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A requested dimensionless time lies beyond what the time scale can reach.
class RangeError : public DomainError {
 public:
  RangeError(const std::string& what, double supremum)
      : DomainError(what), supremum_(supremum) {}

  double supremum() const noexcept { return supremum_; }

 private:
  double supremum_;
};

/// The leading coefficient 1 + (1-alpha) P(tau) of the reduced ODE vanishes,
/// or an integrand denominator does.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double location)
      : Error(what), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace cfrac
