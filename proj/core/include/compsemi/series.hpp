#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "compsemi/poly.hpp"
#include "compsemi/ratfun.hpp"

namespace compsemi {

inline constexpr long kDefaultPrecision = 32;
/// Sentinel precision for exact series.
inline constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 4;

/// Element of X*K[[X]] known modulo X^(N+1).  coeff(d) is the coefficient of
/// X^d; the constant term is identically zero.  A series marked exact() is a
/// polynomial shown in full: coefficients beyond the stored ones are
/// genuinely zero, and operations on exact series stay exact.  Otherwise
/// operations return the largest provably correct precision.
class TruncatedSeries {
public:
  TruncatedSeries() = default;
  /// coeffs indexed by degree; coeffs[0] (when present) must be zero.
  TruncatedSeries(FieldSpecPtr field, std::vector<FieldElement> coeffs,
                  long precision, bool exact);

  static TruncatedSeries zero(const FieldSpecPtr& field, long precision,
                              bool exact = false);
  static TruncatedSeries from_polynomial(const Polynomial& P);  // exact
  static TruncatedSeries identity(const FieldSpecPtr& field);   // X, exact

  const FieldSpecPtr& field() const { return field_; }
  long precision() const { return exact_ ? kInfinitePrecision : precision_; }
  long stored_precision() const { return precision_; }
  bool exact() const { return exact_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }

  /// Coefficient of X^d.  Fails for d beyond the known precision of a
  /// truncated series.
  FieldElement coeff(long d) const;

  bool is_zero_to_precision() const { return !lowest_degree().has_value(); }
  /// Smallest degree with a nonzero visible coefficient.
  std::optional<long> lowest_degree() const;
  /// Lowest degree, or N+1 when nothing is visible (valuation lower bound).
  long valuation_bound() const;

  /// Same coefficients, precision lowered to N.
  TruncatedSeries truncated(long N) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  TruncatedSeries operator-() const;
  friend TruncatedSeries operator*(const FieldElement& c, const TruncatedSeries& a);

private:
  FieldSpecPtr field_;
  std::vector<FieldElement> coeffs_;  // degree-indexed, may be shorter than N+1
  long precision_ = 0;
  bool exact_ = false;
};

/// True when a and b agree on every coefficient up to min(N, both precisions).
bool agree_mod(const TruncatedSeries& a, const TruncatedSeries& b, long N);

/// F o G.  The inner series has positive valuation by construction; the
/// result carries the largest provably correct precision.
TruncatedSeries s_compose(const TruncatedSeries& F, const TruncatedSeries& G);

/// Compositional inverse of L (lowest degree exactly 1).  For exact input the
/// result is computed to `precision` (default kDefaultPrecision).
TruncatedSeries s_invert(const TruncatedSeries& L,
                         std::optional<long> precision = std::nullopt);

/// The unique L with L'(0) = root_choice and F o L = L o X^m mod X^(N+1),
/// where m >= 2 is the lowest degree of F and root_choice^(m-1) equals the
/// inverse of F's lowest coefficient.  skip_char_check exposes the
/// characteristic-p inconsistency (NoSolution) instead of the precondition
/// error, for the negative-control path.
TruncatedSeries boettcher(const TruncatedSeries& F, const FieldElement& root_choice,
                          std::optional<long> precision = std::nullopt,
                          bool skip_char_check = false);

struct GapStat {
  bool infinite = false;
  unsigned long value = 0;        // meaningful when !infinite
  bool precision_limited = false; // infinite verdict from a truncated series
};

/// Difference between the degrees of the two lowest visible terms; infinite
/// when only one term is visible (flagged when the series is truncated).
GapStat gap_stat(const TruncatedSeries& H);

/// Series expansion of 1/F(1/X) at 0 to the requested precision.  Requires
/// deg num - deg den = m >= 2.
TruncatedSeries reciprocal_conjugate(const RationalFunction& F,
                                     long precision = kDefaultPrecision);
TruncatedSeries reciprocal_conjugate(const Polynomial& F,
                                     long precision = kDefaultPrecision);

/// A finite fixed point or the point at infinity.
struct FixedPoint {
  bool at_infinity = false;
  FieldElement value;  // meaningful when !at_infinity

  static FixedPoint infinity() { return {true, {}}; }
  static FixedPoint at(FieldElement beta) { return {false, std::move(beta)}; }
};

/// Series expansion of M^-1 o F o M at 0, M a degree-one map sending 0 to
/// beta (X + beta for finite beta, 1/X for infinity).  Requires F(beta) =
/// beta with local degree >= 2.
TruncatedSeries moebius_to_zero(const RationalFunction& F, const FixedPoint& beta,
                                long precision = kDefaultPrecision);

std::string to_string(const TruncatedSeries& s);

}  // namespace compsemi
