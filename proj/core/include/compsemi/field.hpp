#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "compsemi/errors.hpp"

namespace compsemi {

class FieldSpec;
class FieldElement;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

enum class FieldKind {
  Rationals,    // Q
  Cyclotomic,   // Q(zeta_k), reduced modulo the k-th cyclotomic polynomial
  PrimeField,   // GF(p)
  FiniteField,  // GF(p^e) modulo a monic irreducible over GF(p)
  RadicalExt,   // base[t]/(t^d - value); quotient ring, zero divisors lazy
};

/// Exact scalar over one of the supported coefficient domains.
///
/// Representations are canonical: equal values have identical reprs, so
/// operator== decides equality. Values are immutable after construction and
/// safe to share across threads.
class FieldElement {
public:
  using Repr = std::variant<mpq_class,                  // Rationals
                            std::vector<mpq_class>,     // Cyclotomic, phi(k) coords
                            std::uint64_t,              // PrimeField
                            std::vector<std::uint64_t>, // FiniteField, e coords
                            std::vector<FieldElement>>; // RadicalExt, d coords

  FieldElement() = default;  // rational zero; placeholder for containers

  static FieldElement zero(const FieldSpecPtr& spec);
  static FieldElement one(const FieldSpecPtr& spec);
  static FieldElement from_integer(const FieldSpecPtr& spec, long value);
  static FieldElement from_rational(const FieldSpecPtr& spec, const mpq_class& value);
  /// zeta for Cyclotomic, z for FiniteField, t for RadicalExt.
  static FieldElement generator(const FieldSpecPtr& spec);
  static FieldElement from_repr(FieldSpecPtr spec, Repr repr);

  const FieldSpecPtr& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(const mpz_class& exponent) const;
  FieldElement pow(long exponent) const { return pow(mpz_class(exponent)); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// True when the value lies in the prime field / Q inside the ambient field;
  /// if so, *out (when non-null) receives that rational image (char 0 only).
  bool is_rational(mpq_class* out = nullptr) const;

  const Repr& repr() const { return repr_; }

private:
  FieldElement(FieldSpecPtr spec, Repr repr)
      : spec_(std::move(spec)), repr_(std::move(repr)) {}

  FieldSpecPtr spec_;
  Repr repr_ = mpq_class(0);
};

/// "Adjoin t with t^degree = value to base."  Surfaces whenever an operation
/// needs a root that the working field lacks.
struct ExtensionRequest {
  FieldSpecPtr base;
  unsigned degree = 2;   // >= 2
  FieldElement value;    // nonzero

  std::string describe() const;
};

class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
  static FieldSpecPtr rationals();
  static FieldSpecPtr cyclotomic(unsigned k);
  static FieldSpecPtr prime_field(std::uint64_t p);
  /// modulus low-to-high over GF(p); monic of degree e >= 1; irreducibility
  /// is checked at construction (Rabin test).
  static FieldSpecPtr finite_field(std::uint64_t p, std::vector<std::uint64_t> modulus);
  static FieldSpecPtr radical_extension(const ExtensionRequest& req);

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return char_; }
  bool char_divides(unsigned long n) const { return char_ != 0 && n % char_ == 0; }

  unsigned cyclotomic_k() const { return k_; }
  unsigned phi_k() const { return static_cast<unsigned>(cyclo_modulus_.size() - 1); }
  const std::vector<mpz_class>& cyclotomic_modulus() const { return cyclo_modulus_; }

  std::uint64_t prime() const { return prime_; }
  const std::vector<std::uint64_t>& ff_modulus() const { return ff_modulus_; }
  unsigned ff_degree() const { return static_cast<unsigned>(ff_modulus_.size() - 1); }

  const FieldSpecPtr& base() const { return base_; }
  unsigned radical_degree() const { return radical_degree_; }
  const FieldElement& radical_value() const { return radical_value_; }

  /// Dimension over the prime field (Q or GF(p)).
  unsigned long dimension() const;

  bool same(const FieldSpec& other) const;
  std::string name() const;

private:
  FieldSpec() = default;

  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t char_ = 0;
  unsigned k_ = 0;                          // Cyclotomic
  std::vector<mpz_class> cyclo_modulus_;    // Phi_k, low-to-high, monic
  std::uint64_t prime_ = 0;                 // PrimeField / FiniteField
  std::vector<std::uint64_t> ff_modulus_;   // low-to-high, monic
  FieldSpecPtr base_;                       // RadicalExt
  unsigned radical_degree_ = 0;
  FieldElement radical_value_;
};

inline bool same_field(const FieldSpecPtr& a, const FieldSpecPtr& b) {
  return a == b || (a && b && a->same(*b));
}

/// Multiplicative order of a, or nullopt if a is not a root of unity.
/// Over Q(zeta_k) torsion elements are exactly +-zeta^j, so the test is
/// a^lcm(2,k) = 1 followed by order extraction; over GF(p^e) every nonzero
/// element is torsion.  Over radical extensions the scan is bounded (orders
/// up to kRadicalOrderScanBound); larger torsion is reported as absent.
std::optional<unsigned long> root_of_unity_order(const FieldElement& a);

inline constexpr unsigned long kRadicalOrderScanBound = 1 << 14;

/// The full (finite) torsion subgroup of the working field, in a fixed
/// deterministic order.  For radical extensions this enumerates the verified
/// torsion elements of the form u * t^i with u torsion in the base.
std::vector<FieldElement> torsion_elements(const FieldSpecPtr& spec);

using RootResult = std::variant<FieldElement, ExtensionRequest>;

/// Some x with x^d = a, if one is found in the working field; otherwise the
/// adjunction request t^d = a.  The candidate search order is fixed: rational
/// radicals first, then torsion multiples w * r over the fixed torsion
/// enumeration; over GF(p^e) the search is complete (discrete-log based).
RootResult nth_root_or_request(const FieldElement& a, unsigned d);

FieldSpecPtr extend(const ExtensionRequest& req);

std::string to_string(const FieldElement& a);

}  // namespace compsemi
