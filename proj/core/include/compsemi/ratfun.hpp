#pragma once

#include <string>

#include "compsemi/poly.hpp"

namespace compsemi {

/// Quotient of two polynomials, denominator nonzero and kept monic.  No gcd
/// reduction is performed; equality tests cross-multiply.
class RationalFunction {
public:
  RationalFunction() = default;
  explicit RationalFunction(Polynomial numerator);
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const FieldSpecPtr& field() const { return num_.field(); }

  bool is_polynomial() const { return den_.degree() == 0; }
  /// The denominator is monic, so the polynomial part is just num_ / 1.
  Polynomial as_polynomial() const;

  FieldElement evaluate(const FieldElement& x) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

private:
  Polynomial num_;
  Polynomial den_;
};

/// F composed with G, exact; denominators are cleared without reduction.
RationalFunction compose(const RationalFunction& F, const RationalFunction& G);

std::string to_string(const RationalFunction& F);

}  // namespace compsemi
