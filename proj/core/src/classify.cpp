#include "compsemi/classify.hpp"

#include <algorithm>

#include "u64arith.hpp"

namespace compsemi {

namespace {

Polynomial shifted_power(const FieldSpecPtr& field, const FieldElement& v,
                         unsigned long m) {
  // (X - v)^m
  Polynomial base(field, {-v, FieldElement::one(field)});
  Polynomial acc = Polynomial::constant(FieldElement::one(field));
  for (unsigned long i = 0; i < m; ++i) acc = acc * base;
  return acc;
}

FieldElement embed(const FieldSpecPtr& ext, const FieldElement& base_value) {
  std::vector<FieldElement> coords(ext->radical_degree(),
                                   FieldElement::zero(ext->base()));
  coords[0] = base_value;
  return FieldElement::from_repr(ext, std::move(coords));
}

Polynomial embed_poly(const FieldSpecPtr& ext, const Polynomial& P) {
  std::vector<FieldElement> coeffs;
  coeffs.reserve(P.coeffs().size());
  for (const auto& c : P.coeffs()) coeffs.push_back(embed(ext, c));
  return Polynomial(ext, std::move(coeffs));
}

// Order of a torsion element when an upper bound U with a^U = 1 is known.
unsigned long order_with_bound(const FieldElement& a, unsigned long bound) {
  for (auto d : detail::divisors_u64(bound)) {
    if (a.pow(mpz_class(static_cast<unsigned long>(d))).is_one())
      return static_cast<unsigned long>(d);
  }
  throw Error("internal: element is not torsion within the stated bound");
}

unsigned long commuting_multiple(unsigned long i, unsigned long j) {
  unsigned long k = std::max<unsigned long>(1, (i + j - 1) / j);
  return k * j;
}

}  // namespace

std::optional<MonomialConjugacy> detect_monomial_conjugacy(const Polynomial& F) {
  long m = F.degree();
  if (m < 2) fail(Errc::InvalidArgument, "detect_monomial_conjugacy needs degree >= 2");
  if (F.field()->char_divides(static_cast<unsigned long>(m)))
    fail(Errc::CharDividesDegree, "characteristic divides the degree");
  auto gs = gap_shift(F);
  const FieldElement& v = gs.c;
  const FieldElement& a = F.leading();
  Polynomial expected =
      a * shifted_power(F.field(), v, static_cast<unsigned long>(m)) +
      Polynomial::constant(v);
  if (expected != F) return std::nullopt;
  return MonomialConjugacy{v, a};
}

std::optional<TorsionCertificate> monomial_pair_test(const Polynomial& F,
                                                     const Polynomial& G) {
  auto mc = detect_monomial_conjugacy(F);
  if (!mc) return std::nullopt;
  long m = F.degree();
  long n = G.degree();
  if (n < 2) fail(Errc::InvalidArgument, "monomial_pair_test needs deg G >= 2");
  const FieldElement& b = G.leading();
  Polynomial expected =
      b * shifted_power(G.field(), mc->v, static_cast<unsigned long>(n)) +
      Polynomial::constant(mc->v);
  if (expected != G) return std::nullopt;
  FieldElement t = b.pow(mpz_class(m - 1)) / mc->a.pow(mpz_class(n - 1));
  auto ord = root_of_unity_order(t);
  if (!ord) return std::nullopt;
  return TorsionCertificate{*mc, t, *ord};
}

std::optional<ChebyshevConjugacy> detect_chebyshev_conjugacy(const Polynomial& F) {
  long m = F.degree();
  if (m < 2) fail(Errc::InvalidArgument, "detect_chebyshev_conjugacy needs degree >= 2");
  const auto& field = F.field();
  if (field->char_divides(static_cast<unsigned long>(m)))
    fail(Errc::CharDividesDegree, "characteristic divides the degree");
  auto gs = gap_shift(F);
  const Polynomial& Fv = gs.conjugated;
  const FieldElement& lead = Fv.leading();
  FieldElement cm2 = Fv.coeff(static_cast<std::size_t>(m - 2));
  if (cm2.is_zero()) return std::nullopt;
  FieldElement w = -(cm2 / (FieldElement::from_integer(field, m) * lead));
  Polynomial T = chebyshev(static_cast<unsigned long>(m), field);
  // coefficient identities in w = u^2: Fv.coeff(j) = lead * T.coeff(j) * w^((m-j)/2)
  FieldElement wpow = FieldElement::one(field);
  for (long offset = 1; offset <= m; ++offset) {
    long j = m - offset;
    FieldElement cj = Fv.coeff(static_cast<std::size_t>(j));
    if (offset % 2 == 1) {
      if (!cj.is_zero()) return std::nullopt;
    } else {
      wpow = wpow * w;
      if (cj != lead * T.coeff(static_cast<std::size_t>(j)) * wpow)
        return std::nullopt;
    }
  }
  // eps = lead * u^(m-1) must square to 1
  if (!(lead * lead * w.pow(mpz_class(m - 1))).is_one()) return std::nullopt;
  ChebyshevConjugacy out{gs.c, w, std::nullopt, std::nullopt, std::nullopt};
  auto root = nth_root_or_request(w, 2);
  if (std::holds_alternative<FieldElement>(root)) {
    FieldElement u = std::get<FieldElement>(root);
    out.L = LinearMap{u, gs.c};
    out.eps = lead * u.pow(mpz_class(m - 1));
  } else {
    out.u_request = std::get<ExtensionRequest>(root);
  }
  return out;
}

CommonRootResult detect_common_root(const Polynomial& F, const Polynomial& G) {
  long m = F.degree();
  long n = G.degree();
  if (m < 2 || n < 2)
    fail(Errc::InvalidArgument, "detect_common_root needs degrees >= 2");
  const auto& field = F.field();
  if (field->char_divides(static_cast<unsigned long>(m)) ||
      field->char_divides(static_cast<unsigned long>(n)))
    fail(Errc::CharDividesDegree, "characteristic divides a degree");

  CommonRootResult res;
  // common bases h with m = h^s, n = h^t
  std::vector<std::tuple<unsigned long, unsigned long, unsigned long>> bases;
  for (unsigned long h = 2; h <= static_cast<unsigned long>(std::min(m, n)); ++h) {
    unsigned long s = 0, t = 0;
    unsigned long pw = 1;
    while (pw < static_cast<unsigned long>(m)) { pw *= h; ++s; }
    if (pw != static_cast<unsigned long>(m)) continue;
    pw = 1;
    while (pw < static_cast<unsigned long>(n)) { pw *= h; ++t; }
    if (pw != static_cast<unsigned long>(n)) continue;
    bases.emplace_back(h, s, t);
  }
  if (bases.empty()) return res;

  auto gsF = gap_shift(F);
  Polynomial Gc = G.shifted(gsF.c) - Polynomial::constant(gsF.c);
  if (!is_gap_form(Gc)) return res;
  const Polynomial& Fc = gsF.conjugated;

  for (const auto& [h, s, t] : bases) {
    auto rF = compositional_root(Fc, h, s);
    auto rG = compositional_root(Gc, h, t);
    if (rF.extension && !res.extension) res.extension = rF.extension;
    if (rG.extension && !res.extension) res.extension = rG.extension;
    for (const auto& f_root : rF.roots) {
      for (const auto& g_root : rG.roots) {
        if (f_root.root != g_root.root) continue;
        unsigned long LA = lcal(f_root.root);
        if (!f_root.gamma.pow(mpz_class(LA)).is_one()) continue;
        if (!g_root.gamma.pow(mpz_class(LA)).is_one()) continue;
        res.data = CommonRootData{f_root.root, f_root.gamma, g_root.gamma,
                                  s, t, gsF.c};
        return res;
      }
    }
  }
  return res;
}

namespace {

Classification monomial_notfree(const Polynomial& F, const Polynomial& G,
                                const TorsionCertificate& cert) {
  long m = F.degree();
  long n = G.degree();
  const auto& field = F.field();
  Classification out;
  out.verdict = Verdict::NotFree;
  out.nf_case = NotFreeCase::Monomial;

  FieldElement alpha;
  FieldSpecPtr cfield;
  unsigned long alpha_order = 0;
  auto root = nth_root_or_request(cert.conj.a.inv(), static_cast<unsigned>(m - 1));
  if (std::holds_alternative<FieldElement>(root)) {
    FieldElement u = std::get<FieldElement>(root);
    cfield = field;
    out.normalizer = LinearMap{u, cert.conj.v};
    alpha = G.leading() * u.pow(mpz_class(n - 1));
    auto ord = root_of_unity_order(alpha);
    if (!ord) throw Error("internal: canonical coefficient is not torsion");
    alpha_order = *ord;
  } else {
    const auto& req = std::get<ExtensionRequest>(root);
    out.extension = req;
    cfield = extend(req);
    FieldElement u = FieldElement::generator(cfield);
    out.normalizer = LinearMap{u, embed(cfield, cert.conj.v)};
    alpha = embed(cfield, G.leading()) * u.pow(mpz_class(n - 1));
    alpha_order = order_with_bound(
        alpha, static_cast<unsigned long>(m - 1) * cert.order);
  }
  out.canonical_pair = std::make_pair(
      Polynomial::monomial(FieldElement::one(cfield), static_cast<std::size_t>(m)),
      Polynomial::monomial(alpha, static_cast<std::size_t>(n)));

  auto params = lemma33_params(alpha_order, static_cast<unsigned long>(m));
  Relation rel = lemma33_relation(params.i, 1, params.j);
  rel.composed_degree = word_degree(rel.lhs, static_cast<unsigned long>(m),
                                    static_cast<unsigned long>(n));
  if (!verify_relation(rel, F, G))
    throw Error("internal: monomial witness relation failed to verify");
  out.witness = rel;
  out.commuting_r = commuting_multiple(params.i, params.j);
  return out;
}

Classification chebyshev_notfree(const Polynomial& F, const Polynomial& G,
                                 const ChebyshevConjugacy& chF) {
  long m = F.degree();
  long n = G.degree();
  const auto& field = F.field();
  Classification out;
  out.verdict = Verdict::NotFree;
  out.nf_case = NotFreeCase::Chebyshev;

  Relation rel;
  if (m % 2 == 0) {
    rel = Relation{Word("FFG"), Word("FGF"), 0};
  } else if (n % 2 == 0) {
    rel = Relation{Word("GGF"), Word("GFG"), 0};
  } else {
    rel = Relation{Word("FG"), Word("GF"), 0};
  }
  rel.composed_degree = word_degree(rel.lhs, static_cast<unsigned long>(m),
                                    static_cast<unsigned long>(n));
  if (!verify_relation(rel, F, G))
    throw Error("internal: Chebyshev witness relation failed to verify");
  out.witness = rel;

  FieldSpecPtr cfield = field;
  FieldElement u;
  if (chF.L) {
    out.normalizer = chF.L;
    u = chF.L->u;
  } else {
    out.extension = chF.u_request;
    cfield = extend(*chF.u_request);
    u = FieldElement::generator(cfield);
    out.normalizer = LinearMap{u, embed(cfield, chF.v)};
  }
  auto lift = [&](const Polynomial& P) {
    return cfield == field ? P : embed_poly(cfield, P);
  };
  FieldElement epsF = lift(F).leading() * u.pow(mpz_class(m - 1));
  FieldElement epsG = lift(G).leading() * u.pow(mpz_class(n - 1));
  out.canonical_pair = std::make_pair(
      epsF * chebyshev(static_cast<unsigned long>(m), cfield),
      epsG * chebyshev(static_cast<unsigned long>(n), cfield));
  return out;
}

Classification common_root_notfree(const Polynomial& F, const Polynomial& G,
                                   const CommonRootData& data) {
  long m = F.degree();
  long n = G.degree();
  Classification out;
  out.verdict = Verdict::NotFree;
  out.nf_case = NotFreeCase::CommonRoot;

  // F^(j) = c * G^(i) with c torsion
  Polynomial P = iterate(F, data.j);
  Polynomial Q = iterate(G, data.i);
  FieldElement c = P.leading() / Q.leading();
  if (P != c * Q)
    throw Error("internal: common-root iterates are not proportional");
  auto ordc = root_of_unity_order(c);
  if (!ordc) throw Error("internal: linking scalar is not torsion");
  unsigned long LA = lcal(data.A);
  unsigned long s_param = LA == 0 ? *ordc : LA;
  Relation rel = case3_relation(data.i, data.j, s_param, *ordc,
                                static_cast<unsigned long>(data.A.degree()));
  rel.composed_degree = word_degree(rel.lhs, static_cast<unsigned long>(m),
                                    static_cast<unsigned long>(n));
  if (!verify_relation(rel, F, G))
    throw Error("internal: common-root witness relation failed to verify");
  out.witness = rel;
  out.normalizer = LinearMap{FieldElement::one(F.field()), data.shift};
  out.canonical_pair = std::make_pair(data.gamma * iterate(data.A, data.i),
                                      data.zeta * iterate(data.A, data.j));
  return out;
}

}  // namespace

Classification classify_poly(const Polynomial& F, const Polynomial& G) {
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  long m = F.degree();
  long n = G.degree();
  if (m < 2 || n < 2) fail(Errc::InvalidArgument, "classify_poly needs degrees >= 2");
  if (F.field()->char_divides(static_cast<unsigned long>(m)) ||
      F.field()->char_divides(static_cast<unsigned long>(n)))
    fail(Errc::CharDividesDegree, "characteristic divides a degree");

  if (auto cert = monomial_pair_test(F, G)) return monomial_notfree(F, G, *cert);

  if (auto chF = detect_chebyshev_conjugacy(F)) {
    auto chG = detect_chebyshev_conjugacy(G);
    if (chG && chF->v == chG->v && chF->w == chG->w)
      return chebyshev_notfree(F, G, *chF);
  }

  auto cr = detect_common_root(F, G);
  if (cr.data) return common_root_notfree(F, G, *cr.data);
  if (cr.extension) {
    Classification out;
    out.verdict = Verdict::NeedsExtension;
    out.extension = cr.extension;
    return out;
  }
  Classification out;
  out.verdict = Verdict::Free;
  return out;
}

namespace {

std::vector<long> visible_terms(const TruncatedSeries& B) {
  std::vector<long> out;
  for (std::size_t i = 1; i < B.coeffs().size(); ++i)
    if (!B.coeffs()[i].is_zero()) out.push_back(static_cast<long>(i));
  return out;
}

}  // namespace

Classification classify_series(const TruncatedSeries& F, const TruncatedSeries& G) {
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  auto lowF = F.lowest_degree();
  auto lowG = G.lowest_degree();
  if (!lowF || !lowG || *lowF < 2 || *lowG < 2)
    fail(Errc::DegreeConditionViolated,
         "classify_series needs lowest degrees >= 2");
  long m = *lowF;
  long n = *lowG;
  const auto& field = F.field();
  if (field->char_divides(static_cast<unsigned long>(m)) ||
      field->char_divides(static_cast<unsigned long>(n)))
    fail(Errc::CharDividesDegree, "characteristic divides a lowest degree");

  Classification out;
  auto root = nth_root_or_request(F.coeff(m).inv(), static_cast<unsigned>(m - 1));
  if (std::holds_alternative<ExtensionRequest>(root)) {
    out.verdict = Verdict::NeedsExtension;
    out.extension = std::get<ExtensionRequest>(root);
    return out;
  }
  long bprec = F.exact() && G.exact()
                   ? std::max<long>(kDefaultPrecision, 2 * n + 2)
                   : kInfinitePrecision;
  TruncatedSeries L = boettcher(F, std::get<FieldElement>(root), bprec);
  TruncatedSeries B = s_compose(s_compose(s_invert(L), G), L);
  out.series_normalizer = L;
  out.precision_used = B.precision();

  auto terms = visible_terms(B);
  if (B.precision() < n || terms.empty()) {
    out.verdict = Verdict::InconclusiveAtPrecision;
    out.precision_used = std::min(F.precision(), G.precision());
    return out;
  }
  if (terms.size() >= 2) {
    out.verdict = Verdict::Free;
    return out;
  }
  if (terms[0] != n) throw Error("internal: conjugate has unexpected valuation");
  FieldElement alpha = B.coeff(n);
  auto ord = root_of_unity_order(alpha);
  if (!ord) {
    out.verdict = Verdict::Free;
    return out;
  }

  auto params = lemma33_params(*ord, static_cast<unsigned long>(m));
  Relation rel = lemma33_relation(params.i, 1, params.j);
  rel.composed_degree = word_degree(rel.lhs, static_cast<unsigned long>(m),
                                    static_cast<unsigned long>(n));
  auto fill_notfree = [&](std::optional<long> caveat_precision) {
    out.verdict = Verdict::NotFree;
    out.nf_case = NotFreeCase::Monomial;
    out.witness = rel;
    out.canonical_pair = std::make_pair(
        Polynomial::monomial(FieldElement::one(field), static_cast<std::size_t>(m)),
        Polynomial::monomial(alpha, static_cast<std::size_t>(n)));
    out.commuting_r = commuting_multiple(params.i, params.j);
    out.precision_used = caveat_precision;
  };

  if (F.exact() && G.exact()) {
    TruncatedSeries lhs = eval_word(rel.lhs, F, G);
    TruncatedSeries rhs = eval_word(rel.rhs, F, G);
    if (lhs.coeffs() == rhs.coeffs()) {
      fill_notfree(std::nullopt);
    } else {
      out.verdict = Verdict::Free;
    }
    return out;
  }

  TruncatedSeries lhs = eval_word(rel.lhs, F, G);
  TruncatedSeries rhs = eval_word(rel.rhs, F, G);
  long nrel = std::min(lhs.precision(), rhs.precision());
  long composed_low = static_cast<long>(rel.composed_degree);
  if (nrel < composed_low) {
    out.verdict = Verdict::InconclusiveAtPrecision;
    out.precision_used = std::min(F.precision(), G.precision());
    return out;
  }
  if (agree_mod(lhs, rhs, nrel)) {
    fill_notfree(nrel);
  } else {
    out.verdict = Verdict::Free;
  }
  return out;
}

Classification classify_rational(const RationalFunction& F,
                                 const RationalFunction& G,
                                 const FixedPoint& beta, long precision) {
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  long N = std::max<long>(precision, kDefaultPrecision);
  const auto& field = F.field();

  for (int attempt = 0;; ++attempt) {
    TruncatedSeries U = moebius_to_zero(F, beta, N);
    TruncatedSeries V = moebius_to_zero(G, beta, N);
    long m = U.lowest_degree().value();
    long n = V.lowest_degree().value();
    if (field->char_divides(static_cast<unsigned long>(m)) ||
        field->char_divides(static_cast<unsigned long>(n)))
      fail(Errc::CharDividesDegree, "characteristic divides a local degree");

    Classification out;
    auto root = nth_root_or_request(U.coeff(m).inv(), static_cast<unsigned>(m - 1));
    if (std::holds_alternative<ExtensionRequest>(root)) {
      out.verdict = Verdict::NeedsExtension;
      out.extension = std::get<ExtensionRequest>(root);
      return out;
    }
    TruncatedSeries L = boettcher(U, std::get<FieldElement>(root));
    TruncatedSeries B = s_compose(s_compose(s_invert(L), V), L);
    if (B.precision() < n && attempt < 4) {
      N *= 2;
      continue;
    }
    if (B.precision() < n)
      fail(Errc::DegreeConditionViolated, "could not reach the required precision");

    out.series_normalizer = L;
    out.precision_used = B.precision();
    auto terms = visible_terms(B);
    if (terms.empty() || terms[0] != n)
      throw Error("internal: conjugate has unexpected valuation");
    if (terms.size() >= 2) {
      out.verdict = Verdict::Free;
      return out;
    }
    FieldElement alpha = B.coeff(n);
    auto ord = root_of_unity_order(alpha);
    if (!ord) {
      out.verdict = Verdict::Free;
      return out;
    }
    auto params = lemma33_params(*ord, static_cast<unsigned long>(m));
    Relation rel = lemma33_relation(params.i, 1, params.j);
    rel.composed_degree = word_degree(rel.lhs, static_cast<unsigned long>(m),
                                      static_cast<unsigned long>(n));
    if (verify_relation(rel, F, G)) {
      out.verdict = Verdict::NotFree;
      out.nf_case = NotFreeCase::Monomial;
      out.witness = rel;
      out.canonical_pair = std::make_pair(
          Polynomial::monomial(FieldElement::one(field), static_cast<std::size_t>(m)),
          Polynomial::monomial(alpha, static_cast<std::size_t>(n)));
      out.commuting_r = commuting_multiple(params.i, params.j);
    } else {
      out.verdict = Verdict::Free;
    }
    return out;
  }
}

std::vector<FixedPoint> find_fixed_points(const RationalFunction& F) {
  std::vector<FixedPoint> out;
  const auto& field = F.field();
  if (F.num().degree() - F.den().degree() >= 2) out.push_back(FixedPoint::infinity());

  Polynomial P = F.num() - Polynomial::identity(field) * F.den();
  if (P.is_zero()) return out;

  auto consider = [&](const FieldElement& c) {
    if (!P.evaluate(c).is_zero()) return;
    if (F.den().evaluate(c).is_zero()) return;
    for (const auto& fp : out)
      if (!fp.at_infinity && fp.value == c) return;
    out.push_back(FixedPoint::at(c));
  };

  switch (field->kind()) {
    case FieldKind::PrimeField:
    case FieldKind::FiniteField: {
      consider(FieldElement::zero(field));
      for (const auto& e : torsion_elements(field)) consider(e);
      break;
    }
    default: {
      // rational-root style candidates from the lowest and leading terms
      mpq_class lo, hi;
      std::size_t vdeg = 0;
      while (vdeg < P.coeffs().size() && P.coeffs()[vdeg].is_zero()) ++vdeg;
      consider(FieldElement::zero(field));
      if (vdeg < P.coeffs().size() && P.coeffs()[vdeg].is_rational(&lo) &&
          P.leading().is_rational(&hi) && lo != 0 && hi != 0) {
        mpz_class num_prod = lo.get_num() * hi.get_den();
        mpz_class den_prod = hi.get_num() * lo.get_den();
        if (num_prod.fits_slong_p() && den_prod.fits_slong_p()) {
          auto divisors_of = [](long v) {
            v = std::abs(v);
            return detail::divisors_u64(static_cast<std::uint64_t>(std::max(1L, v)));
          };
          for (auto p : divisors_of(num_prod.get_si())) {
            for (auto q : divisors_of(den_prod.get_si())) {
              mpq_class cand(static_cast<unsigned long>(p),
                             static_cast<unsigned long>(q));
              cand.canonicalize();
              consider(FieldElement::from_rational(field, cand));
              consider(FieldElement::from_rational(field, mpq_class(-cand)));
            }
          }
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace compsemi
