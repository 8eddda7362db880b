#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compsemi/field.hpp"

namespace compsemi {

/// Dense exact-coefficient polynomial over a FieldSpec.  coeffs[i] is the
/// coefficient of X^i; the highest stored entry is nonzero (empty vector is
/// the zero polynomial).  Immutable value type, pure operations.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(FieldSpecPtr field) : field_(std::move(field)) {}
  Polynomial(FieldSpecPtr field, std::vector<FieldElement> coeffs);

  static Polynomial zero(const FieldSpecPtr& field) { return Polynomial(field); }
  static Polynomial constant(const FieldElement& c);
  static Polynomial identity(const FieldSpecPtr& field);  // X
  static Polynomial monomial(const FieldElement& c, std::size_t k);

  const FieldSpecPtr& field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  FieldElement coeff(std::size_t i) const;
  const FieldElement& leading() const;
  FieldElement evaluate(const FieldElement& x) const;
  Polynomial derivative() const;
  /// F(X + c)
  Polynomial shifted(const FieldElement& c) const;
  /// F(c * X)
  Polynomial scaled_arg(const FieldElement& c) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend Polynomial operator*(const FieldElement& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

private:
  FieldSpecPtr field_;
  std::vector<FieldElement> coeffs_;
};

/// Degree-one map L(X) = u*X + v with u != 0.
struct LinearMap {
  FieldElement u;
  FieldElement v;

  LinearMap inverse() const { return {u.inv(), -(v / u)}; }
  Polynomial to_polynomial() const;
  FieldElement apply(const FieldElement& x) const { return u * x + v; }
  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.u == b.u && a.v == b.v;
  }
};

/// F composed with G (F after G), exact.
Polynomial compose(const Polynomial& F, const Polynomial& G);

/// r-th iterate; r = 0 gives X.
Polynomial iterate(const Polynomial& F, unsigned long r);

/// No term of degree (deg F - 1).  Requires deg F >= 1.
bool is_gap_form(const Polynomial& F);

struct GapShift {
  FieldElement c;        // conjugation constant, L = X + c
  Polynomial conjugated; // F(X + c) - c, in gap form
};

/// The unique c with F(X+c) - c in gap form: c = -a_{m-1} / (m * a_m).
/// Requires deg F >= 2 and char not dividing deg F.
GapShift gap_shift(const Polynomial& F);

/// gcd of all differences of degrees of terms; 0 for monomials.  Equivalently
/// the largest s with F = X^r * A(X^s).  Requires F nonconstant.
unsigned long lcal(const Polynomial& F);

/// Normalized Chebyshev polynomial: the unique T_m with
/// T_m(X + 1/X) = X^m + 1/X^m, via T_0 = 2, T_1 = X, T_m = X*T_{m-1} - T_{m-2}.
Polynomial chebyshev(unsigned long m, const FieldSpecPtr& field);

/// beta with beta * F(X) = F(alpha * X), present iff alpha^lcal(F) = 1.
std::optional<FieldElement> scaling_symmetry(const Polynomial& F,
                                             const FieldElement& alpha);

/// Given A o B = F o G with deg A = deg F >= 1, all nonconstant, and char not
/// dividing deg A, the unique degree-one L with F = A o L^{-1} and G = L o B.
LinearMap levi_match(const Polynomial& A, const Polynomial& B,
                     const Polynomial& F, const Polynomial& G);

struct CompositionalRoot {
  FieldElement gamma;  // torsion scalar
  Polynomial root;     // gap-form A with gamma * A^(s) = F
};

struct CompositionalRootResult {
  std::vector<CompositionalRoot> roots;
  /// Set when some torsion candidate needed a root the field lacks; an empty
  /// roots list is then inconclusive rather than a certificate of absence.
  std::optional<ExtensionRequest> extension;
};

/// All pairs (gamma, A) over the working field with gamma * A^(s) = F,
/// gamma torsion, A gap form.  Requires deg F = h^s, char not dividing h,
/// and F in gap form.
CompositionalRootResult compositional_root(const Polynomial& F, unsigned long h,
                                           unsigned long s);

/// L^{-1} o F o L, exact.
Polynomial conjugate(const Polynomial& F, const LinearMap& L);

std::string to_string(const Polynomial& F);

}  // namespace compsemi
