#include "compsemi/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace compsemi {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eof() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }
  mpz_class integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw ParseError("expected an integer", pos);
    return mpz_class(text.substr(start, pos - start));
  }
  unsigned long small_integer() {
    mpz_class z = integer();
    if (!z.fits_ulong_p()) throw ParseError("integer too large", pos);
    return z.get_ui();
  }
};

// The generator written `z`: the distinguished generator of the innermost
// cyclotomic / finite-field layer, embedded upwards through extensions.
FieldElement resolve_z(const FieldSpecPtr& spec, std::size_t at) {
  switch (spec->kind()) {
    case FieldKind::Cyclotomic:
    case FieldKind::FiniteField:
      return FieldElement::generator(spec);
    case FieldKind::RadicalExt: {
      FieldElement inner = resolve_z(spec->base(), at);
      std::vector<FieldElement> coords(spec->radical_degree(),
                                       FieldElement::zero(spec->base()));
      coords[0] = inner;
      return FieldElement::from_repr(spec, std::move(coords));
    }
    default:
      throw ParseError("the field has no generator z", at);
  }
}

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, FieldSpecPtr field)
      : lex_{text}, field_(std::move(field)) {}

  RationalFunction parse() {
    RationalFunction r = sum();
    if (!lex_.eof()) throw ParseError("unexpected trailing input", lex_.pos);
    return r;
  }

 private:
  RationalFunction sum() {
    RationalFunction acc = product();
    while (true) {
      if (lex_.accept('+')) {
        acc = add(acc, product());
      } else if (lex_.accept('-')) {
        acc = sub(acc, product());
      } else {
        return acc;
      }
    }
  }

  RationalFunction product() {
    RationalFunction acc = unary();
    while (true) {
      if (lex_.accept('*')) {
        acc = mul(acc, unary());
      } else if (lex_.peek() == '/') {
        // keep `/` division, but not `//`
        ++lex_.pos;
        acc = div(acc, unary());
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (lex_.accept('-')) {
      RationalFunction r = unary();
      return RationalFunction(-r.num(), r.den());
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (lex_.accept('^')) {
      unsigned long e = lex_.small_integer();
      RationalFunction acc(Polynomial::constant(FieldElement::one(field_)));
      for (unsigned long i = 0; i < e; ++i) acc = mul(acc, base);
      return acc;
    }
    return base;
  }

  RationalFunction atom() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.expect('(');
      RationalFunction r = sum();
      lex_.expect(')');
      return r;
    }
    if (c == 'X') {
      ++lex_.pos;
      return RationalFunction(Polynomial::identity(field_));
    }
    if (c == 'z') {
      std::size_t at = lex_.pos;
      ++lex_.pos;
      return RationalFunction(Polynomial::constant(resolve_z(field_, at)));
    }
    if (c == 't') {
      std::size_t at = lex_.pos;
      ++lex_.pos;
      if (field_->kind() != FieldKind::RadicalExt)
        throw ParseError("t is only defined over radical extensions", at);
      return RationalFunction(
          Polynomial::constant(FieldElement::generator(field_)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class n = lex_.integer();
      return RationalFunction(Polynomial::constant(
          FieldElement::from_rational(field_, mpq_class(n))));
    }
    throw ParseError("expected an expression", lex_.pos);
  }

  RationalFunction add(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.den() + b.num() * a.den(),
                            a.den() * b.den());
  }
  RationalFunction sub(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.den() - b.num() * a.den(),
                            a.den() * b.den());
  }
  RationalFunction mul(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.num(), a.den() * b.den());
  }
  RationalFunction div(const RationalFunction& a, const RationalFunction& b) {
    if (b.num().is_zero()) throw DivisionByZero();
    return RationalFunction(a.num() * b.den(), a.den() * b.num());
  }

  Lexer lex_;
  FieldSpecPtr field_;
};

}  // namespace

FieldSpecPtr parse_field_spec(const std::string& text) {
  Lexer lex{text};
  FieldSpecPtr spec;
  if (lex.accept('Q')) {
    if (lex.accept('(')) {
      for (const char* kw = "zeta"; *kw; ++kw) lex.expect(*kw);
      lex.expect(':');
      unsigned long k = lex.small_integer();
      lex.expect(')');
      spec = FieldSpec::cyclotomic(static_cast<unsigned>(k));
    } else {
      spec = FieldSpec::rationals();
    }
  } else if (lex.accept('G')) {
    lex.expect('F');
    lex.expect('(');
    unsigned long p = lex.small_integer();
    if (lex.accept('^')) {
      unsigned long e = lex.small_integer();
      lex.expect(':');
      std::vector<std::uint64_t> modulus;
      modulus.push_back(lex.small_integer());
      while (lex.accept(',')) modulus.push_back(lex.small_integer());
      lex.expect(')');
      if (modulus.size() != e + 1)
        throw ParseError("modulus needs e+1 coefficients", lex.pos);
      spec = FieldSpec::finite_field(p, std::move(modulus));
    } else {
      lex.expect(')');
      spec = FieldSpec::prime_field(p);
    }
  } else {
    throw ParseError("expected Q, Q(zeta:k), GF(p) or GF(p^e:...)", lex.pos);
  }
  // radical extension suffixes
  while (lex.accept('[')) {
    lex.expect('t');
    lex.expect('^');
    unsigned long d = lex.small_integer();
    lex.expect('=');
    std::size_t depth = 1;
    std::size_t start = lex.pos;
    while (lex.pos < text.size() && depth > 0) {
      if (text[lex.pos] == '[') ++depth;
      if (text[lex.pos] == ']') --depth;
      if (depth > 0) ++lex.pos;
    }
    if (depth != 0) throw ParseError("unterminated extension suffix", lex.pos);
    std::string value_text = text.substr(start, lex.pos - start);
    lex.expect(']');
    FieldElement value = parse_element(value_text, spec);
    spec = extend(ExtensionRequest{spec, static_cast<unsigned>(d), value});
  }
  if (!lex.eof()) throw ParseError("unexpected trailing input", lex.pos);
  return spec;
}

RationalFunction parse_rational(const std::string& text, const FieldSpecPtr& field) {
  return ExpressionParser(text, field).parse();
}

Polynomial parse_polynomial(const std::string& text, const FieldSpecPtr& field) {
  RationalFunction r = parse_rational(text, field);
  if (!r.is_polynomial())
    throw ParseError("expected a polynomial, found a rational function", 0);
  return r.as_polynomial();
}

FieldElement parse_element(const std::string& text, const FieldSpecPtr& field) {
  Polynomial p = parse_polynomial(text, field);
  if (p.degree() > 0) throw ParseError("expected a scalar", 0);
  return p.is_zero() ? FieldElement::zero(field) : p.coeff(0);
}

}  // namespace compsemi
