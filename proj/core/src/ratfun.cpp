#include "compsemi/ratfun.hpp"

namespace compsemi {

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)) {
  den_ = Polynomial::constant(FieldElement::one(num_.field()));
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (!same_field(num_.field(), den_.field())) throw FieldMismatch();
  if (den_.is_zero()) throw DivisionByZero();
  FieldElement lead_inv = den_.leading().inv();
  num_ = lead_inv * num_;
  den_ = lead_inv * den_;
}

Polynomial RationalFunction::as_polynomial() const {
  if (!is_polynomial())
    fail(Errc::InvalidArgument, "rational function has a nonconstant denominator");
  return den_.coeff(0).inv() * num_;
}

FieldElement RationalFunction::evaluate(const FieldElement& x) const {
  FieldElement d = den_.evaluate(x);
  if (d.is_zero()) throw DivisionByZero();
  return num_.evaluate(x) / d;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num() * b.den() == b.num() * a.den();
}

RationalFunction compose(const RationalFunction& F, const RationalFunction& G) {
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  const auto& field = F.field();
  long d = std::max(F.num().degree(), F.den().degree());
  if (d < 0) fail(Errc::ZeroInput, "compose of the zero rational function");
  // A(P/Q) * Q^d = sum a_i P^i Q^(d-i), likewise for B
  std::vector<Polynomial> ppow(static_cast<std::size_t>(d) + 1, Polynomial(field));
  std::vector<Polynomial> qpow(static_cast<std::size_t>(d) + 1, Polynomial(field));
  ppow[0] = Polynomial::constant(FieldElement::one(field));
  qpow[0] = ppow[0];
  for (long i = 1; i <= d; ++i) {
    ppow[i] = ppow[i - 1] * G.num();
    qpow[i] = qpow[i - 1] * G.den();
  }
  auto clear_denominators = [&](const Polynomial& P) {
    Polynomial acc(field);
    for (long i = 0; i <= d; ++i) {
      FieldElement c = P.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      acc = acc + c * (ppow[i] * qpow[d - i]);
    }
    return acc;
  };
  Polynomial num = clear_denominators(F.num());
  Polynomial den = clear_denominators(F.den());
  return RationalFunction(std::move(num), std::move(den));
}

std::string to_string(const RationalFunction& F) {
  if (F.is_polynomial()) return to_string(F.as_polynomial());
  return "(" + to_string(F.num()) + ")/(" + to_string(F.den()) + ")";
}

}  // namespace compsemi
