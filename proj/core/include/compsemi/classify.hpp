#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "compsemi/poly.hpp"
#include "compsemi/ratfun.hpp"
#include "compsemi/semigroup.hpp"
#include "compsemi/series.hpp"

namespace compsemi {

enum class Verdict { Free, NotFree, NeedsExtension, InconclusiveAtPrecision };

enum class NotFreeCase { Monomial, Chebyshev, CommonRoot };

/// Outcome of a freeness decision.  NotFree always carries a witness relation
/// that verifies exactly on the inputs (or to the recorded precision, for
/// genuinely truncated series).
struct Classification {
  Verdict verdict = Verdict::Free;
  std::optional<NotFreeCase> nf_case;
  std::optional<LinearMap> normalizer;
  std::optional<TruncatedSeries> series_normalizer;
  /// Canonical pair; may live over a radical extension of the working field
  /// when the normalizer needs a root the field lacks.
  std::optional<std::pair<Polynomial, Polynomial>> canonical_pair;
  std::optional<Relation> witness;
  std::optional<ExtensionRequest> extension;
  std::optional<long> precision_used;
  /// r > 0 with F^(r) o G and F^(r) commuting (rational path).
  std::optional<unsigned long> commuting_r;
};

/// Data of a linear conjugation to a monomial: F = a (X - v)^m + v, so
/// (uX + v)^{-1} o F o (uX + v) = X^m whenever u^(m-1) = 1/a.
struct MonomialConjugacy {
  FieldElement v;
  FieldElement a;
};

/// Requires deg F >= 2 and char not dividing deg F.  No root extraction.
std::optional<MonomialConjugacy> detect_monomial_conjugacy(const Polynomial& F);

/// Certificate that F, G are simultaneously conjugate to (X^m, alpha X^n)
/// with alpha torsion: t = lead(G)^(m-1) / a^(n-1) and its order.
struct TorsionCertificate {
  MonomialConjugacy conj;
  FieldElement t;
  unsigned long order = 0;
};

std::optional<TorsionCertificate> monomial_pair_test(const Polynomial& F,
                                                     const Polynomial& G);

/// Data of a conjugation to a normalized Chebyshev polynomial: with
/// L = uX + v and u^2 = w, L^{-1} o F o L = eps T_m, eps in {1, -1}.
/// L and eps are present when u itself exists in the working field;
/// otherwise u_request carries the quadratic adjunction.
struct ChebyshevConjugacy {
  FieldElement v;
  FieldElement w;
  std::optional<LinearMap> L;
  std::optional<FieldElement> eps;
  std::optional<ExtensionRequest> u_request;
};

std::optional<ChebyshevConjugacy> detect_chebyshev_conjugacy(const Polynomial& F);

/// Case-(3) data: after the shared gap shift, F = gamma A^(i) and
/// G = zeta A^(j) with gamma^L(A) = zeta^L(A) = 1.
struct CommonRootData {
  Polynomial A;
  FieldElement gamma;
  FieldElement zeta;
  unsigned long i = 1;
  unsigned long j = 1;
  FieldElement shift;  // the shared gap-shift constant
};

struct CommonRootResult {
  std::optional<CommonRootData> data;
  /// Set when a root search left the field; absence of data is then
  /// inconclusive rather than a certificate.
  std::optional<ExtensionRequest> extension;
};

CommonRootResult detect_common_root(const Polynomial& F, const Polynomial& G);

/// The full decision procedure for polynomial pairs of degrees >= 2 with
/// char(K) not dividing deg F * deg G.  Detector order: Monomial, Chebyshev,
/// CommonRoot; overlaps resolve to the earliest case.
Classification classify_poly(const Polynomial& F, const Polynomial& G);

/// Decision procedure for series with lowest degrees >= 2.  Exact inputs get
/// exact verdicts; genuinely truncated inputs may return
/// InconclusiveAtPrecision (or NotFree with the verification precision
/// recorded) in the torsion-monomial branch.
Classification classify_series(const TruncatedSeries& F, const TruncatedSeries& G);

/// Decision procedure for rational functions with a common fixed point beta
/// of local degrees >= 2; reduces to the series classifier and reports the
/// commuting iterate witness on NotFree.
Classification classify_rational(const RationalFunction& F,
                                 const RationalFunction& G,
                                 const FixedPoint& beta,
                                 long precision = kDefaultPrecision);

/// Candidate common fixed points over the working field: rational-root style
/// scan of num(F) - X*den(F) (plus infinity when the degrees allow).  Only
/// candidates visible over the working field are found.
std::vector<FixedPoint> find_fixed_points(const RationalFunction& F);

}  // namespace compsemi
