#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compsemi {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
  FieldMismatch() : Error("operands belong to different fields") {}
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

/// Raised lazily when inverting a non-unit of a radical quotient ring.
/// Carries the rendered offending element.
class ZeroDivisorError : public Error {
public:
  explicit ZeroDivisorError(std::string element)
      : Error("zero divisor encountered: " + element),
        element_(std::move(element)) {}
  const std::string& element() const { return element_; }

private:
  std::string element_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_ = 0;
};

/// Violated operation contracts, tagged with a stable code.
enum class Errc {
  ZeroInput,
  ConstantInput,
  CharDividesDegree,
  NotDegreeOne,
  BadRootChoice,
  NoSolution,
  InnerSeriesHasConstantTerm,
  ZeroSeries,
  DegreeConditionViolated,
  NotAFixedPoint,
  RamificationOne,
  HypothesisViolation,
  BoundTooSmall,
  DivisibilityUnsatisfied,
  InvalidArgument,
};

class DomainError : public Error {
public:
  DomainError(Errc code, const std::string& what) : Error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw DomainError(code, what);
}

}  // namespace compsemi
