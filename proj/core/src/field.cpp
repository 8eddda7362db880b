#include "compsemi/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "render_util.hpp"
#include "u64arith.hpp"

namespace compsemi {

using detail::addmod;
using detail::submod;
using detail::mulmod;
using detail::powmod;
using detail::inv_mod_u64;
using detail::is_prime_u64;
using detail::prime_factors_u64;
using detail::divisors_u64;

namespace {

// ---------------------------------------------------------------------------
// Polynomials over GF(p), dense low-to-high vectors
// ---------------------------------------------------------------------------

using ZpPoly = std::vector<std::uint64_t>;

void zp_trim(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
  }
  zp_trim(c);
  return c;
}

std::uint64_t zp_inv_scalar(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero();
  return powmod(a % p, p - 2, p);
}

// f mod g, g nonzero.
ZpPoly zp_mod(ZpPoly f, const ZpPoly& g, std::uint64_t p) {
  zp_trim(f);
  std::uint64_t glead_inv = zp_inv_scalar(g.back(), p);
  while (f.size() >= g.size()) {
    std::uint64_t c = mulmod(f.back(), glead_inv, p);
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = submod(f[shift + i], mulmod(c, g[i], p), p);
    zp_trim(f);
    if (f.empty()) break;
  }
  return f;
}

ZpPoly zp_powmod_x(const mpz_class& e, const ZpPoly& modulus, std::uint64_t p) {
  ZpPoly result{1};
  ZpPoly base{0, 1};
  base = zp_mod(base, modulus, p);
  mpz_class exp = e;
  std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = zp_mod(zp_mul(result, result, p), modulus, p);
    if (mpz_tstbit(exp.get_mpz_t(), i))
      result = zp_mod(zp_mul(result, base, p), modulus, p);
  }
  return result;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, std::uint64_t p) {
  zp_trim(a); zp_trim(b);
  while (!b.empty()) {
    ZpPoly r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin test: x^(p^e) = x mod f, and gcd(x^(p^(e/q)) - x, f) = 1 for primes q|e.
bool zp_irreducible(const ZpPoly& f, std::uint64_t p) {
  std::size_t e = f.size() - 1;
  if (e == 0) return false;
  mpz_class pe;
  mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
  ZpPoly xq = zp_powmod_x(pe, f, p);
  ZpPoly x{0, 1};
  x = zp_mod(x, f, p);
  if (xq != x) return false;
  for (std::uint64_t q : prime_factors_u64(e)) {
    mpz_class sub;
    mpz_ui_pow_ui(sub.get_mpz_t(), p, static_cast<unsigned long>(e / q));
    ZpPoly g = zp_powmod_x(sub, f, p);
    // g - x
    if (g.size() < 2) g.resize(2, 0);
    g[1] = submod(g[1], 1, p);
    zp_trim(g);
    ZpPoly d = zp_gcd(g, f, p);
    if (d.size() != 1) return false;
  }
  return true;
}

// Extended Euclid in GF(p)[x]: returns (g, s) with s*a = g mod m, g = gcd(a, m).
std::pair<ZpPoly, ZpPoly> zp_half_ext_gcd(ZpPoly a, ZpPoly m, std::uint64_t p) {
  ZpPoly s0{1}, s1{};
  zp_trim(a); zp_trim(m);
  ZpPoly r0 = a, r1 = m;
  while (!r1.empty()) {
    // quotient of r0 by r1
    ZpPoly q;
    ZpPoly rem = r0;
    std::uint64_t lead_inv = zp_inv_scalar(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::uint64_t c = mulmod(rem.back(), lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = submod(rem[shift + i], mulmod(c, r1[i], p), p);
      zp_trim(rem);
    }
    ZpPoly s2 = s0;
    ZpPoly qs1 = zp_mul(q, s1, p);
    if (s2.size() < qs1.size()) s2.resize(qs1.size(), 0);
    for (std::size_t i = 0; i < qs1.size(); ++i)
      s2[i] = submod(s2[i], qs1[i], p);
    zp_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

// ---------------------------------------------------------------------------
// Integer / rational dense polynomials (for cyclotomic moduli and coords)
// ---------------------------------------------------------------------------

void qq_trim(std::vector<mpq_class>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<mpq_class> qq_mul(const std::vector<mpq_class>& a,
                              const std::vector<mpq_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpq_class> c(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  qq_trim(c);
  return c;
}

// Reduce f modulo the monic integer polynomial m (low-to-high).
void qq_reduce(std::vector<mpq_class>& f, const std::vector<mpz_class>& m) {
  std::size_t deg_m = m.size() - 1;
  qq_trim(f);
  while (f.size() > deg_m) {
    mpq_class c = f.back();
    std::size_t shift = f.size() - 1 - deg_m;
    if (c != 0) {
      for (std::size_t i = 0; i < deg_m; ++i)
        if (m[i] != 0) f[shift + i] -= c * mpq_class(m[i]);
    }
    f.pop_back();
    qq_trim(f);
  }
}

// Extended Euclid in Q[x]: (g, s) with s*a = g mod m.
std::pair<std::vector<mpq_class>, std::vector<mpq_class>> qq_half_ext_gcd(
    std::vector<mpq_class> a, std::vector<mpq_class> m) {
  std::vector<mpq_class> s0{mpq_class(1)}, s1{};
  qq_trim(a); qq_trim(m);
  std::vector<mpq_class> r0 = a, r1 = m;
  while (!r1.empty()) {
    std::vector<mpq_class> q;
    std::vector<mpq_class> rem = r0;
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, mpq_class(0));
    while (rem.size() >= r1.size() && !rem.empty()) {
      mpq_class c = rem.back() / r1.back();
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] -= c * r1[i];
      qq_trim(rem);
    }
    std::vector<mpq_class> s2 = s0;
    std::vector<mpq_class> qs1 = qq_mul(q, s1);
    if (s2.size() < qs1.size()) s2.resize(qs1.size(), mpq_class(0));
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    qq_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

// Exact division of integer polynomials (dividend divisible by monic-lead divisor).
std::vector<mpz_class> zz_exact_div(std::vector<mpz_class> num,
                                    const std::vector<mpz_class>& den) {
  std::vector<mpz_class> q(num.size() - den.size() + 1, mpz_class(0));
  while (num.size() >= den.size()) {
    while (!num.empty() && num.back() == 0) num.pop_back();
    if (num.size() < den.size()) break;
    mpz_class c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      num[shift + i] -= c * den[i];
  }
  return q;
}

// k-th cyclotomic polynomial, low-to-high integer coefficients, memoized.
const std::vector<mpz_class>& cyclotomic_polynomial(unsigned k) {
  static std::map<unsigned, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::function<const std::vector<mpz_class>&(unsigned)> get =
      [&](unsigned n) -> const std::vector<mpz_class>& {
    auto found = cache.find(n);
    if (found != cache.end()) return found->second;
    std::vector<mpz_class> result;
    if (n == 1) {
      result = {mpz_class(-1), mpz_class(1)};  // X - 1
    } else {
      std::vector<mpz_class> num(n + 1, mpz_class(0));  // X^n - 1
      num[0] = -1;
      num[n] = 1;
      std::vector<mpz_class> den{mpz_class(1)};
      for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) {
          const auto& phi_d = get(d);
          std::vector<mpz_class> nd(den.size() + phi_d.size() - 1, mpz_class(0));
          for (std::size_t i = 0; i < den.size(); ++i)
            for (std::size_t j = 0; j < phi_d.size(); ++j)
              nd[i + j] += den[i] * phi_d[j];
          den = std::move(nd);
        }
      }
      result = zz_exact_div(std::move(num), den);
    }
    return cache.emplace(n, std::move(result)).first->second;
  };
  return get(k);
}

unsigned long lcm2(unsigned k) { return k % 2 == 0 ? k : 2ul * k; }

// Enumeration cap for operations that walk a whole finite field.
constexpr std::uint64_t kFiniteEnumerationCap = 1u << 20;

}  // namespace

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

FieldSpecPtr FieldSpec::rationals() {
  static FieldSpecPtr instance = [] {
    auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
    s->kind_ = FieldKind::Rationals;
    return FieldSpecPtr(s);
  }();
  return instance;
}

FieldSpecPtr FieldSpec::cyclotomic(unsigned k) {
  if (k < 1) fail(Errc::InvalidArgument, "cyclotomic index must be >= 1");
  static std::map<unsigned, FieldSpecPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->kind_ = FieldKind::Cyclotomic;
  s->k_ = k;
  s->cyclo_modulus_ = cyclotomic_polynomial(k);
  return cache.emplace(k, FieldSpecPtr(s)).first->second;
}

FieldSpecPtr FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p)) fail(Errc::InvalidArgument, "GF(p) needs a prime p");
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->kind_ = FieldKind::PrimeField;
  s->char_ = p;
  s->prime_ = p;
  return s;
}

FieldSpecPtr FieldSpec::finite_field(std::uint64_t p,
                                     std::vector<std::uint64_t> modulus) {
  if (!is_prime_u64(p)) fail(Errc::InvalidArgument, "GF(p^e) needs a prime p");
  for (auto& c : modulus) c %= p;
  zp_trim(modulus);
  if (modulus.size() < 2)
    fail(Errc::InvalidArgument, "finite field modulus must have degree >= 1");
  if (modulus.back() != 1)
    fail(Errc::InvalidArgument, "finite field modulus must be monic");
  if (!zp_irreducible(modulus, p))
    fail(Errc::InvalidArgument, "finite field modulus is reducible over GF(p)");
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->kind_ = FieldKind::FiniteField;
  s->char_ = p;
  s->prime_ = p;
  s->ff_modulus_ = std::move(modulus);
  return s;
}

FieldSpecPtr FieldSpec::radical_extension(const ExtensionRequest& req) {
  if (req.degree < 2)
    fail(Errc::InvalidArgument, "radical extension degree must be >= 2");
  if (!req.base || !same_field(req.base, req.value.spec()))
    throw FieldMismatch("extension value must live in the base field");
  if (req.value.is_zero())
    fail(Errc::InvalidArgument, "radical extension value must be nonzero");
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->kind_ = FieldKind::RadicalExt;
  s->char_ = req.base->characteristic();
  s->base_ = req.base;
  s->radical_degree_ = req.degree;
  s->radical_value_ = req.value;
  return s;
}

unsigned long FieldSpec::dimension() const {
  switch (kind_) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField:
      return 1;
    case FieldKind::Cyclotomic:
      return phi_k();
    case FieldKind::FiniteField:
      return ff_degree();
    case FieldKind::RadicalExt:
      return radical_degree_ * base_->dimension();
  }
  return 1;
}

bool FieldSpec::same(const FieldSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case FieldKind::Rationals:
      return true;
    case FieldKind::Cyclotomic:
      return k_ == other.k_;
    case FieldKind::PrimeField:
      return prime_ == other.prime_;
    case FieldKind::FiniteField:
      return prime_ == other.prime_ && ff_modulus_ == other.ff_modulus_;
    case FieldKind::RadicalExt:
      return radical_degree_ == other.radical_degree_ &&
             base_->same(*other.base_) &&
             radical_value_ == other.radical_value_;
  }
  return false;
}

std::string FieldSpec::name() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::Cyclotomic:
      return "Q(zeta:" + std::to_string(k_) + ")";
    case FieldKind::PrimeField:
      return "GF(" + std::to_string(prime_) + ")";
    case FieldKind::FiniteField: {
      std::string s = "GF(" + std::to_string(prime_) + "^" +
                      std::to_string(ff_degree()) + ":";
      for (std::size_t i = 0; i < ff_modulus_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ff_modulus_[i]);
      }
      return s + ")";
    }
    case FieldKind::RadicalExt:
      return base_->name() + "[t^" + std::to_string(radical_degree_) + "=" +
             to_string(radical_value_) + "]";
  }
  return "?";
}

std::string ExtensionRequest::describe() const {
  return "t^" + std::to_string(degree) + " = " + to_string(value) + " over " +
         (base ? base->name() : "?");
}

// ---------------------------------------------------------------------------
// FieldElement construction
// ---------------------------------------------------------------------------

namespace {

void require_spec(const FieldSpecPtr& spec) {
  if (!spec) fail(Errc::InvalidArgument, "operation on element without a field");
}

std::vector<mpq_class> cyclo_canonical(const FieldSpec& spec,
                                       std::vector<mpq_class> coords) {
  qq_reduce(coords, spec.cyclotomic_modulus());
  coords.resize(spec.phi_k(), mpq_class(0));
  return coords;
}

}  // namespace

FieldElement FieldElement::from_repr(FieldSpecPtr spec, Repr repr) {
  return FieldElement(std::move(spec), std::move(repr));
}

FieldElement FieldElement::zero(const FieldSpecPtr& spec) {
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
      return FieldElement(spec, mpq_class(0));
    case FieldKind::Cyclotomic:
      return FieldElement(spec, std::vector<mpq_class>(spec->phi_k(), mpq_class(0)));
    case FieldKind::PrimeField:
      return FieldElement(spec, std::uint64_t{0});
    case FieldKind::FiniteField:
      return FieldElement(spec, std::vector<std::uint64_t>(spec->ff_degree(), 0));
    case FieldKind::RadicalExt: {
      std::vector<FieldElement> coords(spec->radical_degree(),
                                       FieldElement::zero(spec->base()));
      return FieldElement(spec, std::move(coords));
    }
  }
  throw Error("unreachable");
}

FieldElement FieldElement::from_rational(const FieldSpecPtr& spec,
                                         const mpq_class& value) {
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
      return FieldElement(spec, value);
    case FieldKind::Cyclotomic: {
      std::vector<mpq_class> raw{value};
      return FieldElement(spec, cyclo_canonical(*spec, std::move(raw)));
    }
    case FieldKind::PrimeField:
    case FieldKind::FiniteField: {
      std::uint64_t p = spec->prime();
      std::uint64_t den = mpz_fdiv_ui(value.get_den().get_mpz_t(), p);
      if (den == 0) throw DivisionByZero();
      std::uint64_t num = mpz_fdiv_ui(value.get_num().get_mpz_t(), p);
      std::uint64_t r = mulmod(num, zp_inv_scalar(den, p), p);
      if (spec->kind() == FieldKind::PrimeField) return FieldElement(spec, r);
      std::vector<std::uint64_t> coords(spec->ff_degree(), 0);
      coords[0] = r;
      return FieldElement(spec, std::move(coords));
    }
    case FieldKind::RadicalExt: {
      std::vector<FieldElement> coords(spec->radical_degree(),
                                       FieldElement::zero(spec->base()));
      coords[0] = FieldElement::from_rational(spec->base(), value);
      return FieldElement(spec, std::move(coords));
    }
  }
  throw Error("unreachable");
}

FieldElement FieldElement::one(const FieldSpecPtr& spec) {
  return from_rational(spec, mpq_class(1));
}

FieldElement FieldElement::from_integer(const FieldSpecPtr& spec, long value) {
  return from_rational(spec, mpq_class(value));
}

FieldElement FieldElement::generator(const FieldSpecPtr& spec) {
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField:
      fail(Errc::InvalidArgument, "field has no distinguished generator");
    case FieldKind::Cyclotomic: {
      std::vector<mpq_class> raw{mpq_class(0), mpq_class(1)};
      return FieldElement(spec, cyclo_canonical(*spec, std::move(raw)));
    }
    case FieldKind::FiniteField: {
      std::vector<std::uint64_t> coords(spec->ff_degree(), 0);
      if (coords.size() == 1) {
        // degree-1 modulus x - c: generator is the residue c
        coords[0] = submod(0, spec->ff_modulus()[0], spec->prime());
      } else {
        coords[1] = 1;
      }
      return FieldElement(spec, std::move(coords));
    }
    case FieldKind::RadicalExt: {
      std::vector<FieldElement> coords(spec->radical_degree(),
                                       FieldElement::zero(spec->base()));
      coords[1 % coords.size()] = FieldElement::one(spec->base());
      return FieldElement(spec, std::move(coords));
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// FieldElement predicates
// ---------------------------------------------------------------------------

bool FieldElement::is_zero() const {
  switch (repr_.index()) {
    case 0:
      return std::get<0>(repr_) == 0;
    case 1: {
      for (const auto& c : std::get<1>(repr_))
        if (c != 0) return false;
      return true;
    }
    case 2:
      return std::get<2>(repr_) == 0;
    case 3: {
      for (auto c : std::get<3>(repr_))
        if (c != 0) return false;
      return true;
    }
    case 4: {
      for (const auto& c : std::get<4>(repr_))
        if (!c.is_zero()) return false;
      return true;
    }
  }
  return false;
}

bool FieldElement::is_one() const {
  if (!spec_) return std::get<0>(repr_) == 1;
  return *this == FieldElement::one(spec_);
}

bool FieldElement::is_rational(mpq_class* out) const {
  switch (repr_.index()) {
    case 0:
      if (out) *out = std::get<0>(repr_);
      return true;
    case 1: {
      const auto& v = std::get<1>(repr_);
      for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
      if (out) *out = v.empty() ? mpq_class(0) : v[0];
      return true;
    }
    case 2:
      if (out) *out = mpq_class(static_cast<unsigned long>(std::get<2>(repr_)));
      return true;
    case 3: {
      const auto& v = std::get<3>(repr_);
      for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
      if (out) *out = mpq_class(static_cast<unsigned long>(v.empty() ? 0 : v[0]));
      return true;
    }
    case 4: {
      const auto& v = std::get<4>(repr_);
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!v[i].is_zero()) return false;
      return v.empty() ? false : v[0].is_rational(out);
    }
  }
  return false;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.spec_, b.spec_)) throw FieldMismatch();
  return a.repr_ == b.repr_;
}

// ---------------------------------------------------------------------------
// FieldElement arithmetic
// ---------------------------------------------------------------------------

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.spec(), b.spec())) throw FieldMismatch();
  const auto& spec = a.spec();
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
      return FieldElement::from_repr(
          spec, mpq_class(std::get<mpq_class>(a.repr()) + std::get<mpq_class>(b.repr())));
    case FieldKind::Cyclotomic: {
      auto v = std::get<std::vector<mpq_class>>(a.repr());
      const auto& w = std::get<std::vector<mpq_class>>(b.repr());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      return FieldElement::from_repr(spec, std::move(v));
    }
    case FieldKind::PrimeField:
      return FieldElement::from_repr(
          spec, addmod(std::get<std::uint64_t>(a.repr()),
                       std::get<std::uint64_t>(b.repr()), spec->prime()));
    case FieldKind::FiniteField: {
      auto v = std::get<std::vector<std::uint64_t>>(a.repr());
      const auto& w = std::get<std::vector<std::uint64_t>>(b.repr());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = addmod(v[i], w[i], spec->prime());
      return FieldElement::from_repr(spec, std::move(v));
    }
    case FieldKind::RadicalExt: {
      auto v = std::get<std::vector<FieldElement>>(a.repr());
      const auto& w = std::get<std::vector<FieldElement>>(b.repr());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      return FieldElement::from_repr(spec, std::move(v));
    }
  }
  throw Error("unreachable");
}

FieldElement FieldElement::operator-() const {
  require_spec(spec_);
  switch (spec_->kind()) {
    case FieldKind::Rationals:
      return FieldElement(spec_, mpq_class(-std::get<mpq_class>(repr_)));
    case FieldKind::Cyclotomic: {
      auto v = std::get<std::vector<mpq_class>>(repr_);
      for (auto& c : v) c = -c;
      return FieldElement(spec_, std::move(v));
    }
    case FieldKind::PrimeField:
      return FieldElement(spec_, submod(0, std::get<std::uint64_t>(repr_),
                                        spec_->prime()));
    case FieldKind::FiniteField: {
      auto v = std::get<std::vector<std::uint64_t>>(repr_);
      for (auto& c : v) c = submod(0, c, spec_->prime());
      return FieldElement(spec_, std::move(v));
    }
    case FieldKind::RadicalExt: {
      auto v = std::get<std::vector<FieldElement>>(repr_);
      for (auto& c : v) c = -c;
      return FieldElement(spec_, std::move(v));
    }
  }
  throw Error("unreachable");
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return a + (-b);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.spec(), b.spec())) throw FieldMismatch();
  const auto& spec = a.spec();
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
      return FieldElement::from_repr(
          spec, mpq_class(std::get<mpq_class>(a.repr()) * std::get<mpq_class>(b.repr())));
    case FieldKind::Cyclotomic: {
      auto prod = qq_mul(std::get<std::vector<mpq_class>>(a.repr()),
                         std::get<std::vector<mpq_class>>(b.repr()));
      return FieldElement::from_repr(spec, cyclo_canonical(*spec, std::move(prod)));
    }
    case FieldKind::PrimeField:
      return FieldElement::from_repr(
          spec, mulmod(std::get<std::uint64_t>(a.repr()),
                       std::get<std::uint64_t>(b.repr()), spec->prime()));
    case FieldKind::FiniteField: {
      auto prod = zp_mul(std::get<std::vector<std::uint64_t>>(a.repr()),
                         std::get<std::vector<std::uint64_t>>(b.repr()),
                         spec->prime());
      prod = zp_mod(std::move(prod), spec->ff_modulus(), spec->prime());
      prod.resize(spec->ff_degree(), 0);
      return FieldElement::from_repr(spec, std::move(prod));
    }
    case FieldKind::RadicalExt: {
      const auto& v = std::get<std::vector<FieldElement>>(a.repr());
      const auto& w = std::get<std::vector<FieldElement>>(b.repr());
      std::size_t d = spec->radical_degree();
      std::vector<FieldElement> prod(2 * d - 1, FieldElement::zero(spec->base()));
      for (std::size_t i = 0; i < d; ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j)
          if (!w[j].is_zero()) prod[i + j] += v[i] * w[j];
      }
      // fold t^(d+r) = value * t^r
      for (std::size_t idx = prod.size(); idx-- > d;) {
        if (!prod[idx].is_zero())
          prod[idx - d] += prod[idx] * spec->radical_value();
      }
      prod.resize(d, FieldElement::zero(spec->base()));
      return FieldElement::from_repr(spec, std::move(prod));
    }
  }
  throw Error("unreachable");
}

FieldElement FieldElement::inv() const {
  require_spec(spec_);
  if (is_zero()) throw DivisionByZero();
  switch (spec_->kind()) {
    case FieldKind::Rationals:
      return FieldElement(spec_, mpq_class(1 / std::get<mpq_class>(repr_)));
    case FieldKind::Cyclotomic: {
      auto coords = std::get<std::vector<mpq_class>>(repr_);
      qq_trim(coords);
      std::vector<mpq_class> modulus;
      for (const auto& c : spec_->cyclotomic_modulus()) modulus.emplace_back(c);
      auto [g, s] = qq_half_ext_gcd(coords, modulus);
      // Phi_k irreducible over Q: gcd is a nonzero constant
      mpq_class lead = g.back();
      std::vector<mpq_class> out;
      out.reserve(s.size());
      for (auto& c : s) out.push_back(c / lead);
      return FieldElement(spec_, cyclo_canonical(*spec_, std::move(out)));
    }
    case FieldKind::PrimeField:
      return FieldElement(spec_, zp_inv_scalar(std::get<std::uint64_t>(repr_),
                                               spec_->prime()));
    case FieldKind::FiniteField: {
      auto coords = std::get<std::vector<std::uint64_t>>(repr_);
      zp_trim(coords);
      auto [g, s] = zp_half_ext_gcd(coords, spec_->ff_modulus(), spec_->prime());
      if (g.size() != 1)
        throw Error("finite field modulus is not irreducible");
      std::uint64_t lead_inv = zp_inv_scalar(g[0], spec_->prime());
      for (auto& c : s) c = mulmod(c, lead_inv, spec_->prime());
      s = zp_mod(std::move(s), spec_->ff_modulus(), spec_->prime());
      s.resize(spec_->ff_degree(), 0);
      return FieldElement(spec_, std::move(s));
    }
    case FieldKind::RadicalExt: try {
      // extended Euclid of the coordinate polynomial against t^d - value
      const auto& base = spec_->base();
      std::size_t d = spec_->radical_degree();
      std::vector<FieldElement> f = std::get<std::vector<FieldElement>>(repr_);
      while (!f.empty() && f.back().is_zero()) f.pop_back();
      std::vector<FieldElement> m(d + 1, FieldElement::zero(base));
      m[0] = -spec_->radical_value();
      m[d] = FieldElement::one(base);

      auto trim = [](std::vector<FieldElement>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
      };
      std::vector<FieldElement> r0 = f, r1 = m;
      std::vector<FieldElement> s0{FieldElement::one(base)}, s1;
      while (!r1.empty()) {
        std::vector<FieldElement> rem = r0;
        std::vector<FieldElement> q;
        FieldElement lead_inv = r1.back().inv();
        if (rem.size() >= r1.size())
          q.assign(rem.size() - r1.size() + 1, FieldElement::zero(base));
        while (rem.size() >= r1.size() && !rem.empty()) {
          FieldElement c = rem.back() * lead_inv;
          std::size_t shift = rem.size() - r1.size();
          q[shift] = c;
          for (std::size_t i = 0; i < r1.size(); ++i)
            rem[shift + i] -= c * r1[i];
          trim(rem);
        }
        std::vector<FieldElement> s2 = s0;
        if (!s1.empty() && !q.empty()) {
          std::vector<FieldElement> qs(q.size() + s1.size() - 1,
                                       FieldElement::zero(base));
          for (std::size_t i = 0; i < q.size(); ++i)
            if (!q[i].is_zero())
              for (std::size_t j = 0; j < s1.size(); ++j)
                qs[i + j] += q[i] * s1[j];
          if (s2.size() < qs.size()) s2.resize(qs.size(), FieldElement::zero(base));
          for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
          trim(s2);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      if (r0.size() != 1) throw ZeroDivisorError(to_string(*this));
      FieldElement g_inv = r0[0].inv();
      std::vector<FieldElement> out(d, FieldElement::zero(base));
      for (std::size_t i = 0; i < s0.size() && i < d; ++i) out[i] = s0[i] * g_inv;
      return FieldElement(spec_, std::move(out));
    } catch (const ZeroDivisorError&) {
      throw ZeroDivisorError(to_string(*this));
    }
  }
  throw Error("unreachable");
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inv();
}

FieldElement FieldElement::pow(const mpz_class& exponent) const {
  require_spec(spec_);
  if (exponent < 0) return inv().pow(mpz_class(-exponent));
  FieldElement result = FieldElement::one(spec_);
  if (exponent == 0) return result;
  FieldElement base = *this;
  std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = result * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string to_string(const FieldElement& a) {
  using detail::render_poly_terms;
  auto render_generic_poly = [](const std::vector<std::string>& cs,
                                const std::vector<bool>& nz,
                                const std::string& var) {
    return render_poly_terms(cs, nz, var);
  };
  switch (a.repr().index()) {
    case 0:
      return std::get<mpq_class>(a.repr()).get_str();
    case 1: {
      const auto& v = std::get<std::vector<mpq_class>>(a.repr());
      std::vector<std::string> cs;
      std::vector<bool> nz;
      for (const auto& c : v) {
        cs.push_back(c.get_str());
        nz.push_back(c != 0);
      }
      return render_generic_poly(cs, nz, "z");
    }
    case 2:
      return std::to_string(std::get<std::uint64_t>(a.repr()));
    case 3: {
      const auto& v = std::get<std::vector<std::uint64_t>>(a.repr());
      std::vector<std::string> cs;
      std::vector<bool> nz;
      for (auto c : v) {
        cs.push_back(std::to_string(c));
        nz.push_back(c != 0);
      }
      return render_generic_poly(cs, nz, "z");
    }
    case 4: {
      const auto& v = std::get<std::vector<FieldElement>>(a.repr());
      std::vector<std::string> cs;
      std::vector<bool> nz;
      for (const auto& c : v) {
        cs.push_back(to_string(c));
        nz.push_back(!c.is_zero());
      }
      return render_generic_poly(cs, nz, "t");
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Torsion
// ---------------------------------------------------------------------------

std::optional<unsigned long> root_of_unity_order(const FieldElement& a) {
  require_spec(a.spec());
  if (a.is_zero()) fail(Errc::ZeroInput, "root_of_unity_order of zero");
  const auto& spec = a.spec();
  switch (spec->kind()) {
    case FieldKind::Rationals: {
      const auto& q = std::get<mpq_class>(a.repr());
      if (q == 1) return 1;
      if (q == -1) return 2;
      return std::nullopt;
    }
    case FieldKind::Cyclotomic: {
      unsigned long L = lcm2(spec->cyclotomic_k());
      if (!a.pow(mpz_class(static_cast<unsigned long>(L))).is_one())
        return std::nullopt;
      for (auto d : divisors_u64(L)) {
        if (a.pow(mpz_class(static_cast<unsigned long>(d))).is_one())
          return static_cast<unsigned long>(d);
      }
      return std::nullopt;  // unreachable
    }
    case FieldKind::PrimeField:
    case FieldKind::FiniteField: {
      mpz_class q_big;
      mpz_ui_pow_ui(q_big.get_mpz_t(), spec->prime(),
                    spec->kind() == FieldKind::PrimeField ? 1 : spec->ff_degree());
      q_big -= 1;
      if (!q_big.fits_ulong_p())
        throw Error("finite field too large for order computation");
      std::uint64_t ord = q_big.get_ui();
      for (std::uint64_t f : prime_factors_u64(ord)) {
        while (ord % f == 0 &&
               a.pow(mpz_class(static_cast<unsigned long>(ord / f))).is_one())
          ord /= f;
      }
      return static_cast<unsigned long>(ord);
    }
    case FieldKind::RadicalExt: {
      FieldElement acc = a;
      for (unsigned long ell = 1; ell <= kRadicalOrderScanBound; ++ell) {
        if (acc.is_one()) return ell;
        acc = acc * a;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<FieldElement> torsion_elements(const FieldSpecPtr& spec) {
  require_spec(spec);
  switch (spec->kind()) {
    case FieldKind::Rationals:
      return {FieldElement::one(spec), -FieldElement::one(spec)};
    case FieldKind::Cyclotomic: {
      FieldElement g = FieldElement::generator(spec);
      if (spec->cyclotomic_k() % 2 == 1) g = -g;
      unsigned long L = lcm2(spec->cyclotomic_k());
      std::vector<FieldElement> out;
      FieldElement acc = FieldElement::one(spec);
      for (unsigned long i = 0; i < L; ++i) {
        out.push_back(acc);
        acc = acc * g;
      }
      return out;
    }
    case FieldKind::PrimeField: {
      if (spec->prime() > kFiniteEnumerationCap)
        throw Error("prime field too large to enumerate torsion");
      std::vector<FieldElement> out;
      for (std::uint64_t r = 1; r < spec->prime(); ++r)
        out.push_back(FieldElement::from_repr(spec, r));
      return out;
    }
    case FieldKind::FiniteField: {
      mpz_class q_big;
      mpz_ui_pow_ui(q_big.get_mpz_t(), spec->prime(), spec->ff_degree());
      if (q_big > kFiniteEnumerationCap)
        throw Error("finite field too large to enumerate torsion");
      std::uint64_t q = q_big.get_ui();
      std::vector<FieldElement> out;
      std::vector<std::uint64_t> digits(spec->ff_degree(), 0);
      for (std::uint64_t n = 1; n < q; ++n) {
        std::size_t i = 0;
        while (true) {
          digits[i] += 1;
          if (digits[i] == spec->prime()) {
            digits[i] = 0;
            ++i;
          } else {
            break;
          }
        }
        out.push_back(FieldElement::from_repr(spec, digits));
      }
      return out;
    }
    case FieldKind::RadicalExt: {
      auto base_torsion = torsion_elements(spec->base());
      FieldElement t = FieldElement::generator(spec);
      std::vector<FieldElement> out;
      for (const auto& u : base_torsion) {
        FieldElement tu = FieldElement::zero(spec);
        {
          std::vector<FieldElement> coords(spec->radical_degree(),
                                           FieldElement::zero(spec->base()));
          coords[0] = u;
          tu = FieldElement::from_repr(spec, std::move(coords));
        }
        FieldElement cand = tu;
        for (unsigned i = 0; i < spec->radical_degree(); ++i) {
          if (root_of_unity_order(cand).has_value()) {
            bool seen = false;
            for (const auto& e : out)
              if (e == cand) { seen = true; break; }
            if (!seen) out.push_back(cand);
          }
          cand = cand * t;
        }
      }
      return out;
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Roots
// ---------------------------------------------------------------------------

namespace {

std::optional<mpq_class> rational_nth_root(const mpq_class& a, unsigned d) {
  if (d == 1) return a;
  if (a == 0) return mpq_class(0);
  bool negative = a < 0;
  if (negative && d % 2 == 0) return std::nullopt;
  mpz_class num = abs(a.get_num());
  mpz_class den = a.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), d)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d)) return std::nullopt;
  mpq_class r(rn, rd);
  r.canonicalize();
  return negative ? mpq_class(-r) : r;
}

// Discrete log in GF(q)* (q small), baby-step giant-step.  Returns y with
// g^y = a, where g generates the group of order n.
std::optional<std::uint64_t> bsgs_dlog(const FieldElement& g,
                                       const FieldElement& a,
                                       std::uint64_t n) {
  std::uint64_t m = 1;
  while (m * m < n) ++m;
  std::unordered_map<std::string, std::uint64_t> table;
  FieldElement cur = FieldElement::one(g.spec());
  for (std::uint64_t j = 0; j < m; ++j) {
    table.emplace(to_string(cur), j);
    cur = cur * g;
  }
  FieldElement giant = g.pow(mpz_class(static_cast<unsigned long>(m))).inv();
  FieldElement probe = a;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = table.find(to_string(probe));
    if (it != table.end()) {
      std::uint64_t y = i * m + it->second;
      return y % n;
    }
    probe = probe * giant;
  }
  return std::nullopt;
}

// A generator of GF(q)*, deterministic (first in enumeration order).
FieldElement find_group_generator(const FieldSpecPtr& spec, std::uint64_t n) {
  auto factors = prime_factors_u64(n);
  for (const auto& cand : torsion_elements(spec)) {
    bool ok = true;
    for (auto f : factors) {
      if (cand.pow(mpz_class(static_cast<unsigned long>(n / f))).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  throw Error("no generator found (inconsistent field)");
}

FieldElement embed_in_ext(const FieldSpecPtr& ext, const FieldElement& base_elem) {
  std::vector<FieldElement> coords(ext->radical_degree(),
                                   FieldElement::zero(ext->base()));
  coords[0] = base_elem;
  return FieldElement::from_repr(ext, std::move(coords));
}

}  // namespace

RootResult nth_root_or_request(const FieldElement& a, unsigned d) {
  require_spec(a.spec());
  if (a.is_zero()) fail(Errc::ZeroInput, "nth root of zero");
  if (d == 0) fail(Errc::InvalidArgument, "root exponent must be >= 1");
  if (d == 1) return a;
  const auto& spec = a.spec();
  auto request = [&]() -> RootResult {
    return ExtensionRequest{spec, d, a};
  };

  switch (spec->kind()) {
    case FieldKind::Rationals:
    case FieldKind::Cyclotomic: {
      // fixed search order: torsion multiples of a rational radical
      for (const auto& w : torsion_elements(spec)) {
        FieldElement b = a * w.pow(mpz_class(static_cast<long>(d))).inv();
        mpq_class b_rat;
        if (!b.is_rational(&b_rat)) continue;
        auto r = rational_nth_root(b_rat, d);
        if (r) return w * FieldElement::from_rational(spec, *r);
      }
      return request();
    }
    case FieldKind::PrimeField:
    case FieldKind::FiniteField: {
      mpz_class q_big;
      mpz_ui_pow_ui(q_big.get_mpz_t(), spec->prime(),
                    spec->kind() == FieldKind::PrimeField ? 1 : spec->ff_degree());
      q_big -= 1;
      if (!q_big.fits_ulong_p())
        throw Error("finite field too large for root search");
      std::uint64_t n = q_big.get_ui();
      std::uint64_t g0 = std::gcd(static_cast<std::uint64_t>(d), n);
      if (!a.pow(mpz_class(static_cast<unsigned long>(n / g0))).is_one())
        return request();  // not a d-th power in this field
      if (g0 == 1) {
        // d invertible mod n: unique root a^(d^-1 mod n)
        std::uint64_t dinv = inv_mod_u64(d % n, n);
        return a.pow(mpz_class(static_cast<unsigned long>(dinv)));
      }
      if (n + 1 > kFiniteEnumerationCap)
        throw Error("finite field too large for root search");
      FieldElement g = find_group_generator(spec, n);
      auto e = bsgs_dlog(g, a, n);
      if (!e) return request();
      // solve d*y = e (mod n)
      std::uint64_t rhs = *e;
      if (rhs % g0 != 0) return request();
      std::uint64_t n2 = n / g0, d2 = (d / g0) % n2, e2 = (rhs / g0) % n2;
      std::uint64_t y = n2 <= 1 ? 0 : mulmod(inv_mod_u64(d2, n2), e2, n2);
      return g.pow(mpz_class(static_cast<unsigned long>(y)));
    }
    case FieldKind::RadicalExt: {
      // monomial candidates x = c * t^i with c over the base: x^d = c^d * value^(i)
      // (t^(i*d) folds to value^i).  Only base-embedded a can match.
      const auto& coords_a = std::get<std::vector<FieldElement>>(a.repr());
      bool a_embedded = true;
      for (std::size_t j = 1; j < coords_a.size(); ++j)
        if (!coords_a[j].is_zero()) { a_embedded = false; break; }
      if (a_embedded) {
        FieldElement t = FieldElement::generator(spec);
        FieldElement tpow = FieldElement::one(spec);
        unsigned dext = spec->radical_degree();
        for (unsigned i = 0; i < dext; ++i) {
          unsigned long e = static_cast<unsigned long>(i) * d;
          if (e % dext == 0) {
            FieldElement target =
                coords_a[0] *
                spec->radical_value().pow(mpz_class(e / dext)).inv();
            auto sub = nth_root_or_request(target, d);
            if (std::holds_alternative<FieldElement>(sub)) {
              FieldElement x =
                  embed_in_ext(spec, std::get<FieldElement>(sub)) * tpow;
              if (x.pow(mpz_class(static_cast<long>(d))) == a) return x;
            }
          }
          tpow = tpow * t;
        }
      }
      return request();
    }
  }
  throw Error("unreachable");
}

FieldSpecPtr extend(const ExtensionRequest& req) {
  return FieldSpec::radical_extension(req);
}

}  // namespace compsemi
