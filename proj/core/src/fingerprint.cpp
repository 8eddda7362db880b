#include "fingerprint.hpp"

#include <cstring>

#include "u64arith.hpp"

namespace compsemi::detail {

namespace {

constexpr unsigned kPoints = 3;

// First prime >= start with q = 1 (mod k).
std::uint64_t find_fingerprint_prime(std::uint64_t start, std::uint64_t k) {
  std::uint64_t q = start + (k + 1 - start % k) % k;
  while (!is_prime_u64(q)) q += k;
  return q;
}

// An element of order exactly k in GF(q)*, k | q-1.
std::uint64_t primitive_kth_root(std::uint64_t q, std::uint64_t k) {
  auto factors = prime_factors_u64(k);
  for (std::uint64_t x = 2; x < q; ++x) {
    std::uint64_t w = powmod(x, (q - 1) / k, q);
    if (w == 1 && k > 1) continue;
    bool primitive = true;
    for (auto f : factors) {
      if (powmod(w, k / f, q) == 1) { primitive = false; break; }
    }
    if (primitive) return w;
  }
  throw FingerprintFailure("no primitive root found");
}

std::uint64_t mpz_mod_u64(const mpz_class& z, std::uint64_t q) {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(q));
}

// Images of Q / Q(zeta_k) coefficients in GF(q) with zeta -> omega.
class CharZeroEvaluator final : public SearchEvaluator {
public:
  CharZeroEvaluator(const Polynomial& F, const Polynomial& G, unsigned attempt) {
    const auto& field = F.field();
    std::uint64_t k = field->kind() == FieldKind::Cyclotomic
                          ? field->cyclotomic_k()
                          : 1;
    std::uint64_t q = (1ULL << 61);
    for (unsigned i = 0; i <= attempt; ++i) q = find_fingerprint_prime(q + 1, k);
    q_ = q;
    omega_ = k > 1 ? primitive_kth_root(q_, k) : 1;
    fimg_ = map_poly(F);
    gimg_ = map_poly(G);
    for (unsigned i = 0; i < kPoints; ++i) points_.push_back(2 + i);
  }

  std::vector<std::uint64_t> letter_state(char letter) const override {
    const auto& img = letter == 'F' ? fimg_ : gimg_;
    std::vector<std::uint64_t> st;
    st.reserve(points_.size());
    for (auto x : points_) st.push_back(horner(img, x));
    return st;
  }

  std::vector<std::uint64_t> extend(
      char letter, const std::vector<std::uint64_t>& state) const override {
    const auto& img = letter == 'F' ? fimg_ : gimg_;
    std::vector<std::uint64_t> st;
    st.reserve(state.size());
    for (auto v : state) st.push_back(horner(img, v));
    return st;
  }

private:
  std::uint64_t map_element(const FieldElement& c) const {
    mpq_class r;
    if (c.is_rational(&r)) {
      std::uint64_t den = mpz_mod_u64(r.get_den(), q_);
      if (den == 0) throw FingerprintFailure("denominator vanishes mod q");
      return mulmod(mpz_mod_u64(r.get_num(), q_), inv_mod_u64(den, q_), q_);
    }
    const auto& coords = std::get<std::vector<mpq_class>>(c.repr());
    std::uint64_t acc = 0;
    std::uint64_t wpow = 1;
    for (const auto& coord : coords) {
      std::uint64_t den = mpz_mod_u64(coord.get_den(), q_);
      if (den == 0) throw FingerprintFailure("denominator vanishes mod q");
      std::uint64_t val =
          mulmod(mpz_mod_u64(coord.get_num(), q_), inv_mod_u64(den, q_), q_);
      acc = addmod(acc, mulmod(val, wpow, q_), q_);
      wpow = mulmod(wpow, omega_, q_);
    }
    return acc;
  }

  std::vector<std::uint64_t> map_poly(const Polynomial& P) const {
    std::vector<std::uint64_t> out;
    out.reserve(P.coeffs().size());
    for (const auto& c : P.coeffs()) out.push_back(map_element(c));
    return out;
  }

  std::uint64_t horner(const std::vector<std::uint64_t>& img, std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = img.size(); i-- > 0;)
      acc = addmod(mulmod(acc, x, q_), img[i], q_);
    return acc;
  }

  std::uint64_t q_ = 0;
  std::uint64_t omega_ = 1;
  std::vector<std::uint64_t> fimg_, gimg_;
  std::vector<std::uint64_t> points_;
};

// GF(p) coefficients evaluated inside GF(p^r) with p^r comfortably above the
// degree bound; coefficients embed as constants.
class PrimeFieldEvaluator final : public SearchEvaluator {
public:
  PrimeFieldEvaluator(const Polynomial& F, const Polynomial& G,
                      unsigned long degree_bound, unsigned attempt) {
    std::uint64_t p = F.field()->prime();
    unsigned long target = 4 * (degree_bound + 2);
    unsigned r = 2;
    {
      unsigned __int128 pw = static_cast<unsigned __int128>(p) * p;
      while (pw < target && r < 48) {
        pw *= p;
        ++r;
      }
    }
    big_ = make_extension(p, r, attempt);
    fimg_ = embed_poly(F);
    gimg_ = embed_poly(G);
    FieldElement z = FieldElement::generator(big_);
    FieldElement point = z;
    for (unsigned i = 0; i < kPoints; ++i) {
      points_.push_back(point);
      point = point + FieldElement::one(big_);
    }
    width_ = big_->ff_degree();
  }

  std::vector<std::uint64_t> letter_state(char letter) const override {
    const auto& img = letter == 'F' ? fimg_ : gimg_;
    std::vector<std::uint64_t> st;
    for (const auto& x : points_) flatten(horner(img, x), st);
    return st;
  }

  std::vector<std::uint64_t> extend(
      char letter, const std::vector<std::uint64_t>& state) const override {
    const auto& img = letter == 'F' ? fimg_ : gimg_;
    std::vector<std::uint64_t> st;
    for (std::size_t off = 0; off + width_ <= state.size(); off += width_) {
      std::vector<std::uint64_t> coords(state.begin() + off,
                                        state.begin() + off + width_);
      FieldElement x = FieldElement::from_repr(big_, std::move(coords));
      flatten(horner(img, x), st);
    }
    return st;
  }

private:
  static FieldSpecPtr make_extension(std::uint64_t p, unsigned r, unsigned attempt) {
    // deterministic scan over monic degree-r moduli; construction validates
    // irreducibility
    std::vector<std::uint64_t> tail(r, 0);
    for (std::uint64_t counter = 1 + attempt;; ++counter) {
      std::uint64_t c = counter;
      for (unsigned i = 0; i < r; ++i) {
        tail[i] = c % p;
        c /= p;
      }
      if (c != 0) break;
      std::vector<std::uint64_t> modulus = tail;
      modulus.push_back(1);
      try {
        return FieldSpec::finite_field(p, modulus);
      } catch (const DomainError&) {
        continue;
      }
    }
    throw FingerprintFailure("no irreducible modulus found");
  }

  std::vector<FieldElement> embed_poly(const Polynomial& P) const {
    std::vector<FieldElement> out;
    for (const auto& c : P.coeffs()) {
      std::vector<std::uint64_t> coords(big_->ff_degree(), 0);
      coords[0] = std::get<std::uint64_t>(c.repr());
      out.push_back(FieldElement::from_repr(big_, std::move(coords)));
    }
    return out;
  }

  FieldElement horner(const std::vector<FieldElement>& img,
                      const FieldElement& x) const {
    FieldElement acc = FieldElement::zero(big_);
    for (std::size_t i = img.size(); i-- > 0;) acc = acc * x + img[i];
    return acc;
  }

  void flatten(const FieldElement& v, std::vector<std::uint64_t>& out) const {
    const auto& coords = std::get<std::vector<std::uint64_t>>(v.repr());
    out.insert(out.end(), coords.begin(), coords.end());
  }

  FieldSpecPtr big_;
  std::vector<FieldElement> fimg_, gimg_;
  std::vector<FieldElement> points_;
  std::size_t width_ = 1;
};

class ExactEvaluator final : public SearchEvaluator {
public:
  std::vector<std::uint64_t> letter_state(char) const override { return {}; }
  std::vector<std::uint64_t> extend(
      char, const std::vector<std::uint64_t>&) const override {
    return {};
  }
  bool exact_mode() const override { return true; }
};

}  // namespace

std::string state_key(const std::vector<std::uint64_t>& state) {
  std::string s;
  s.resize(state.size() * sizeof(std::uint64_t));
  std::memcpy(s.data(), state.data(), s.size());
  return s;
}

std::unique_ptr<SearchEvaluator> SearchEvaluator::make(const Polynomial& F,
                                                       const Polynomial& G,
                                                       unsigned long degree_bound,
                                                       unsigned attempt) {
  if (attempt >= kMaxFingerprintAttempts)
    return std::make_unique<ExactEvaluator>();
  switch (F.field()->kind()) {
    case FieldKind::Rationals:
    case FieldKind::Cyclotomic:
      return std::make_unique<CharZeroEvaluator>(F, G, attempt);
    case FieldKind::PrimeField:
      try {
        return std::make_unique<PrimeFieldEvaluator>(F, G, degree_bound, attempt);
      } catch (const Error&) {
        return std::make_unique<ExactEvaluator>();
      }
    default:
      return std::make_unique<ExactEvaluator>();
  }
}

}  // namespace compsemi::detail
