#pragma once

#include <string>

#include "compsemi/field.hpp"
#include "compsemi/poly.hpp"
#include "compsemi/ratfun.hpp"

namespace compsemi {

/// Field spec grammar: `Q`, `Q(zeta:k)`, `GF(p)`, `GF(p^e:c0,c1,...,ce)`
/// (modulus low-to-high over GF(p)), optionally followed by radical
/// extension suffixes `[t^d=expr]` with expr over the base.
FieldSpecPtr parse_field_spec(const std::string& text);

/// Expression grammar over the field: `+ - * / ^` with nonnegative integer
/// exponents, parentheses, integer and `p/q` literals, the generator `z`
/// (cyclotomic and finite fields), `t` (radical extensions), and the
/// indeterminate `X`.
RationalFunction parse_rational(const std::string& text, const FieldSpecPtr& field);

/// As parse_rational, but the result must be a polynomial.
Polynomial parse_polynomial(const std::string& text, const FieldSpecPtr& field);

/// As parse_rational, but the result must be a scalar.
FieldElement parse_element(const std::string& text, const FieldSpecPtr& field);

}  // namespace compsemi
