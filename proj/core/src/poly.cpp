#include "compsemi/poly.hpp"

#include <algorithm>
#include <numeric>

#include "render_util.hpp"

namespace compsemi {

namespace {

void require_same_field(const Polynomial& a, const Polynomial& b) {
  if (!same_field(a.field(), b.field())) throw FieldMismatch();
}

}  // namespace

Polynomial::Polynomial(FieldSpecPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& c) {
  std::vector<FieldElement> v;
  if (!c.is_zero()) v.push_back(c);
  return Polynomial(c.spec(), std::move(v));
}

Polynomial Polynomial::identity(const FieldSpecPtr& field) {
  return Polynomial(field, {FieldElement::zero(field), FieldElement::one(field)});
}

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t k) {
  if (c.is_zero()) return Polynomial(c.spec());
  std::vector<FieldElement> v(k + 1, FieldElement::zero(c.spec()));
  v[k] = c;
  return Polynomial(c.spec(), std::move(v));
}

FieldElement Polynomial::coeff(std::size_t i) const {
  if (i < coeffs_.size()) return coeffs_[i];
  return FieldElement::zero(field_);
}

const FieldElement& Polynomial::leading() const {
  if (coeffs_.empty()) fail(Errc::ZeroInput, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

FieldElement Polynomial::evaluate(const FieldElement& x) const {
  FieldElement acc = FieldElement::zero(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial(field_);
  std::vector<FieldElement> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    out.push_back(FieldElement::from_integer(field_, static_cast<long>(i)) * coeffs_[i]);
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::shifted(const FieldElement& c) const {
  Polynomial xc(field_, {c, FieldElement::one(field_)});
  return compose(*this, xc);
}

Polynomial Polynomial::scaled_arg(const FieldElement& c) const {
  std::vector<FieldElement> out = coeffs_;
  FieldElement acc = FieldElement::one(field_);
  for (std::size_t i = 1; i < out.size(); ++i) {
    acc = acc * c;
    out[i] = out[i] * acc;
  }
  return Polynomial(field_, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  std::vector<FieldElement> out = a.coeffs_;
  if (out.size() < b.coeffs_.size())
    out.resize(b.coeffs_.size(), FieldElement::zero(a.field_));
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Polynomial(a.field_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<FieldElement> out = coeffs_;
  for (auto& c : out) c = -c;
  return Polynomial(field_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
  std::vector<FieldElement> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                                FieldElement::zero(a.field_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(a.field_, std::move(out));
}

Polynomial operator*(const FieldElement& c, const Polynomial& a) {
  if (c.is_zero()) return Polynomial(a.field_);
  std::vector<FieldElement> out = a.coeffs_;
  for (auto& x : out) x = c * x;
  return Polynomial(a.field_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  return true;
}

Polynomial LinearMap::to_polynomial() const {
  return Polynomial(u.spec(), {v, u});
}

Polynomial compose(const Polynomial& F, const Polynomial& G) {
  require_same_field(F, G);
  // Horner over the coefficient field
  Polynomial acc(F.field());
  for (std::size_t i = F.coeffs().size(); i-- > 0;) {
    acc = acc * G;
    acc = acc + Polynomial::constant(F.coeffs()[i]);
  }
  return acc;
}

Polynomial iterate(const Polynomial& F, unsigned long r) {
  Polynomial acc = Polynomial::identity(F.field());
  for (unsigned long i = 0; i < r; ++i) acc = compose(F, acc);
  return acc;
}

bool is_gap_form(const Polynomial& F) {
  if (F.degree() < 1) fail(Errc::ConstantInput, "gap form needs degree >= 1");
  return F.coeff(static_cast<std::size_t>(F.degree() - 1)).is_zero();
}

GapShift gap_shift(const Polynomial& F) {
  long m = F.degree();
  if (m < 2) fail(Errc::ConstantInput, "gap_shift needs degree >= 2");
  if (F.field()->char_divides(static_cast<unsigned long>(m)))
    fail(Errc::CharDividesDegree, "gap_shift: characteristic divides degree");
  FieldElement am = F.leading();
  FieldElement am1 = F.coeff(static_cast<std::size_t>(m - 1));
  FieldElement c =
      -(am1 / (FieldElement::from_integer(F.field(), m) * am));
  Polynomial conj = F.shifted(c) - Polynomial::constant(c);
  return GapShift{c, std::move(conj)};
}

unsigned long lcal(const Polynomial& F) {
  if (F.is_constant()) fail(Errc::ConstantInput, "lcal needs a nonconstant polynomial");
  long first = -1;
  unsigned long g = 0;
  for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
    if (F.coeffs()[i].is_zero()) continue;
    if (first < 0) {
      first = static_cast<long>(i);
    } else {
      g = std::gcd(g, static_cast<unsigned long>(static_cast<long>(i) - first));
    }
  }
  return g;
}

Polynomial chebyshev(unsigned long m, const FieldSpecPtr& field) {
  Polynomial t0 = Polynomial::constant(FieldElement::from_integer(field, 2));
  if (m == 0) return t0;
  Polynomial t1 = Polynomial::identity(field);
  if (m == 1) return t1;
  Polynomial x = Polynomial::identity(field);
  for (unsigned long i = 2; i <= m; ++i) {
    Polynomial t2 = x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

std::optional<FieldElement> scaling_symmetry(const Polynomial& F,
                                             const FieldElement& alpha) {
  if (F.is_constant()) fail(Errc::ConstantInput, "scaling_symmetry needs nonconstant F");
  if (alpha.is_zero()) fail(Errc::ZeroInput, "scaling_symmetry needs alpha != 0");
  unsigned long l = lcal(F);
  if (l > 0 && !alpha.pow(mpz_class(l)).is_one()) return std::nullopt;
  FieldElement beta = alpha.pow(mpz_class(static_cast<unsigned long>(F.degree())));
  return beta;
}

LinearMap levi_match(const Polynomial& A, const Polynomial& B,
                     const Polynomial& F, const Polynomial& G) {
  if (A.is_constant() || B.is_constant() || F.is_constant() || G.is_constant())
    fail(Errc::HypothesisViolation, "levi_match needs nonconstant inputs");
  if (A.degree() != F.degree() || A.degree() < 1)
    fail(Errc::HypothesisViolation, "levi_match needs deg A = deg F >= 1");
  if (A.field()->char_divides(static_cast<unsigned long>(A.degree())))
    fail(Errc::CharDividesDegree, "levi_match: characteristic divides deg A");
  if (B.degree() != G.degree())
    fail(Errc::HypothesisViolation, "levi_match needs deg B = deg G");
  FieldElement u = G.leading() / B.leading();
  Polynomial diff = G - u * B;
  if (diff.degree() > 0)
    fail(Errc::HypothesisViolation, "levi_match: G - u*B is not constant");
  FieldElement v = diff.is_zero() ? FieldElement::zero(G.field()) : diff.coeff(0);
  LinearMap L{u, v};
  if (compose(F, L.to_polynomial()) != A)
    fail(Errc::HypothesisViolation, "levi_match: F o L != A");
  return L;
}

namespace {

// ipow with overflow guard; desk-scale degrees only.
unsigned long ipow_checked(unsigned long base, unsigned long exp) {
  unsigned long r = 1;
  for (unsigned long i = 0; i < exp; ++i) {
    if (r > (1ul << 62) / base) throw Error("degree overflow");
    r *= base;
  }
  return r;
}

}  // namespace

CompositionalRootResult compositional_root(const Polynomial& F, unsigned long h,
                                           unsigned long s) {
  CompositionalRootResult result;
  if (h < 2 || s < 1) fail(Errc::InvalidArgument, "compositional_root needs h >= 2, s >= 1");
  unsigned long hs = ipow_checked(h, s);
  if (F.degree() < 0 || static_cast<unsigned long>(F.degree()) != hs)
    fail(Errc::InvalidArgument, "compositional_root: deg F != h^s");
  if (F.field()->char_divides(h))
    fail(Errc::CharDividesDegree, "compositional_root: characteristic divides h");
  if (!is_gap_form(F))
    fail(Errc::HypothesisViolation, "compositional_root: F must be in gap form");

  const auto& field = F.field();
  // exponent of the leading coefficient of A in A^(s): 1 + h + ... + h^(s-1)
  unsigned long lead_exp = 0;
  {
    unsigned long pw = 1;
    for (unsigned long i = 0; i < s; ++i) {
      lead_exp += pw;
      pw *= h;
    }
  }

  auto torsion = torsion_elements(field);
  auto push_unique = [&](const FieldElement& gamma, const Polynomial& A) {
    for (const auto& r : result.roots)
      if (r.gamma == gamma && r.root == A) return;
    result.roots.push_back({gamma, A});
  };

  for (const auto& gamma : torsion) {
    FieldElement target = F.leading() / gamma;
    auto root = nth_root_or_request(target, static_cast<unsigned>(lead_exp));
    if (std::holds_alternative<ExtensionRequest>(root)) {
      if (!result.extension)
        result.extension = std::get<ExtensionRequest>(root);
      continue;
    }
    FieldElement a0 = std::get<FieldElement>(root);
    // all leading candidates: torsion multiples with (u*a0)^lead_exp = target
    for (const auto& u : torsion) {
      FieldElement a = u * a0;
      if (!(a.pow(mpz_class(lead_exp)) == target)) continue;

      // top-down triangular solve for the tail of A (gap coefficient stays 0)
      std::vector<FieldElement> acoef(h + 1, FieldElement::zero(field));
      acoef[h] = a;
      bool consistent = true;
      for (unsigned long k = 2; k <= h && consistent; ++k) {
        std::size_t pos = hs - k;
        Polynomial A0(field, acoef);
        FieldElement p0 = (gamma * iterate(A0, s)).coeff(pos);
        auto acoef1 = acoef;
        acoef1[h - k] = FieldElement::one(field);
        Polynomial A1(field, acoef1);
        FieldElement p1 = (gamma * iterate(A1, s)).coeff(pos);
        FieldElement slope = p1 - p0;
        FieldElement delta = F.coeff(pos) - p0;
        if (slope.is_zero()) {
          if (!delta.is_zero()) consistent = false;
        } else {
          acoef[h - k] = delta / slope;
        }
      }
      if (!consistent) continue;
      Polynomial A(field, acoef);
      if (gamma * iterate(A, s) == F) push_unique(gamma, A);
    }
  }
  return result;
}

Polynomial conjugate(const Polynomial& F, const LinearMap& L) {
  Polynomial inner = compose(F, L.to_polynomial());
  // apply L^{-1}(y) = (y - v)/u afterwards
  return L.u.inv() * (inner - Polynomial::constant(L.v));
}

std::string to_string(const Polynomial& F) {
  std::vector<std::string> cs;
  std::vector<bool> nz;
  cs.reserve(F.coeffs().size());
  for (const auto& c : F.coeffs()) {
    cs.push_back(to_string(c));
    nz.push_back(!c.is_zero());
  }
  return detail::render_poly_terms(cs, nz, "X");
}

}  // namespace compsemi
