#include "compsemi/series.hpp"

#include <algorithm>

#include "render_util.hpp"

namespace compsemi {

namespace {

void trim(std::vector<FieldElement>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

long add_capped(long a, long b) {
  if (a >= kInfinitePrecision || b >= kInfinitePrecision) return kInfinitePrecision;
  return std::min(a + b, kInfinitePrecision);
}

long mul_capped(long a, long b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kInfinitePrecision / b) return kInfinitePrecision;
  return a * b;
}

// c += a * b, keeping only degrees <= cutoff.
void mul_acc_truncated(std::vector<FieldElement>& c,
                       const std::vector<FieldElement>& a,
                       const std::vector<FieldElement>& b, long cutoff,
                       const FieldSpecPtr& field) {
  std::size_t limit = static_cast<std::size_t>(cutoff);
  if (c.size() < std::min(a.size() + b.size(), limit + 2))
    c.resize(std::min(a.empty() || b.empty() ? std::size_t(0) : a.size() + b.size() - 1,
                      limit + 1),
             FieldElement::zero(field));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (i > limit) break;
    std::size_t jmax = std::min(b.size(), limit - i + 1);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (b[j].is_zero()) continue;
      if (c.size() <= i + j) c.resize(i + j + 1, FieldElement::zero(field));
      c[i + j] += a[i] * b[j];
    }
  }
}

std::vector<FieldElement> mul_truncated(const std::vector<FieldElement>& a,
                                        const std::vector<FieldElement>& b,
                                        long cutoff, const FieldSpecPtr& field) {
  std::vector<FieldElement> c;
  mul_acc_truncated(c, a, b, cutoff, field);
  trim(c);
  return c;
}

// Composition of coefficient vectors (inner valuation >= 1), truncated.
std::vector<FieldElement> compose_truncated(const std::vector<FieldElement>& f,
                                            const std::vector<FieldElement>& g,
                                            long cutoff, const FieldSpecPtr& field) {
  std::vector<FieldElement> acc;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = mul_truncated(acc, g, cutoff, field);
    if (!f[i].is_zero()) {
      if (acc.empty()) acc.push_back(FieldElement::zero(field));
      acc[0] += f[i];
    }
    trim(acc);
  }
  return acc;
}

}  // namespace

TruncatedSeries::TruncatedSeries(FieldSpecPtr field, std::vector<FieldElement> coeffs,
                                 long precision, bool exact)
    : field_(std::move(field)), coeffs_(std::move(coeffs)),
      precision_(precision), exact_(exact) {
  if (!coeffs_.empty() && !coeffs_[0].is_zero())
    fail(Errc::InnerSeriesHasConstantTerm,
         "series must lie in X*K[[X]] (zero constant term)");
  if (precision_ < 1) fail(Errc::InvalidArgument, "series precision must be >= 1");
  if (static_cast<long>(coeffs_.size()) > precision_ + 1 && !exact_)
    coeffs_.resize(static_cast<std::size_t>(precision_) + 1,
                   FieldElement::zero(field_));
  trim(coeffs_);
}

TruncatedSeries TruncatedSeries::zero(const FieldSpecPtr& field, long precision,
                                      bool exact) {
  return TruncatedSeries(field, {}, precision, exact);
}

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& P) {
  if (!P.is_zero() && !P.coeff(0).is_zero())
    fail(Errc::InnerSeriesHasConstantTerm,
         "polynomial has a nonzero constant term");
  long prec = std::max<long>(P.degree(), 1);
  return TruncatedSeries(P.field(), P.coeffs(), prec, true);
}

TruncatedSeries TruncatedSeries::identity(const FieldSpecPtr& field) {
  return from_polynomial(Polynomial::identity(field));
}

FieldElement TruncatedSeries::coeff(long d) const {
  if (d < 0) fail(Errc::InvalidArgument, "negative degree");
  if (d < static_cast<long>(coeffs_.size())) return coeffs_[static_cast<std::size_t>(d)];
  if (exact_ || d <= precision_) return FieldElement::zero(field_);
  fail(Errc::InvalidArgument, "coefficient beyond known precision");
}

std::optional<long> TruncatedSeries::lowest_degree() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<long>(i);
  return std::nullopt;
}

long TruncatedSeries::valuation_bound() const {
  auto low = lowest_degree();
  if (low) return *low;
  return exact_ ? kInfinitePrecision : precision_ + 1;
}

TruncatedSeries TruncatedSeries::truncated(long N) const {
  if (N >= precision()) return *this;
  std::vector<FieldElement> c = coeffs_;
  if (static_cast<long>(c.size()) > N + 1)
    c.resize(static_cast<std::size_t>(N) + 1, FieldElement::zero(field_));
  return TruncatedSeries(field_, std::move(c), N, false);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!same_field(a.field(), b.field())) throw FieldMismatch();
  long prec = std::min(a.precision(), b.precision());
  bool exact = a.exact() && b.exact();
  std::vector<FieldElement> c = a.coeffs();
  if (c.size() < b.coeffs().size())
    c.resize(b.coeffs().size(), FieldElement::zero(a.field()));
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  if (!exact && static_cast<long>(c.size()) > prec + 1)
    c.resize(static_cast<std::size_t>(prec) + 1, FieldElement::zero(a.field()));
  return TruncatedSeries(a.field(), std::move(c), exact ? std::max<long>(1, static_cast<long>(c.size()) - 1) : prec, exact);
}

TruncatedSeries TruncatedSeries::operator-() const {
  std::vector<FieldElement> c = coeffs_;
  for (auto& x : c) x = -x;
  return TruncatedSeries(field_, std::move(c), precision_, exact_);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a + (-b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!same_field(a.field(), b.field())) throw FieldMismatch();
  // unknown tails enter at N_a + val(b) and N_b + val(a)
  long prec = std::min(add_capped(a.precision(), b.valuation_bound()),
                       add_capped(b.precision(), a.valuation_bound()));
  bool exact = a.exact() && b.exact();
  long cutoff = exact ? add_capped(static_cast<long>(a.coeffs().size()),
                                   static_cast<long>(b.coeffs().size()))
                      : prec;
  auto c = mul_truncated(a.coeffs(), b.coeffs(), cutoff, a.field());
  if (exact)
    return TruncatedSeries(a.field(), std::move(c),
                           std::max<long>(1, static_cast<long>(c.size()) - 1), true);
  return TruncatedSeries(a.field(), std::move(c), std::max<long>(1, prec), false);
}

TruncatedSeries operator*(const FieldElement& c, const TruncatedSeries& a) {
  std::vector<FieldElement> v = a.coeffs();
  for (auto& x : v) x = c * x;
  return TruncatedSeries(a.field(), std::move(v), a.stored_precision(), a.exact());
}

bool agree_mod(const TruncatedSeries& a, const TruncatedSeries& b, long N) {
  long limit = std::min({N, a.precision(), b.precision()});
  for (long d = 1; d <= limit; ++d)
    if (a.coeff(d) != b.coeff(d)) return false;
  return true;
}

TruncatedSeries s_compose(const TruncatedSeries& F, const TruncatedSeries& G) {
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  const auto& field = F.field();
  long f = F.valuation_bound();
  long g = G.valuation_bound();
  if (F.exact() && G.exact()) {
    auto c = compose_truncated(F.coeffs(), G.coeffs(), kInfinitePrecision / 2, field);
    return TruncatedSeries(field, std::move(c),
                           std::max<long>(1, static_cast<long>(c.size()) - 1), true);
  }
  // unknown tail of F enters at (N_F + 1) * val(G); unknown tail of G enters
  // at N_G + (val(F) - 1) * val(G) through the derivative term
  long bound1 = F.exact() ? kInfinitePrecision
                          : mul_capped(add_capped(F.precision(), 1), g) - 1;
  long bound2 = G.exact() ? kInfinitePrecision
                          : add_capped(G.precision(), mul_capped(std::max<long>(f - 1, 0), g));
  long prec = std::max<long>(1, std::min(bound1, bound2));
  auto c = compose_truncated(F.coeffs(), G.coeffs(), prec, field);
  return TruncatedSeries(field, std::move(c), prec, false);
}

TruncatedSeries s_invert(const TruncatedSeries& L, std::optional<long> precision) {
  auto low = L.lowest_degree();
  if (!low || *low != 1)
    fail(Errc::NotDegreeOne, "compositional inverse needs lowest degree 1");
  const auto& field = L.field();
  long N = precision.value_or(L.exact() ? kDefaultPrecision : L.precision());
  N = std::min(N, L.precision());
  FieldElement b1 = L.coeff(1);
  FieldElement b1_inv = b1.inv();
  std::vector<FieldElement> m(2, FieldElement::zero(field));
  m[1] = b1_inv;
  // determine c_k from the X^k coefficient of M o L
  for (long k = 2; k <= N; ++k) {
    auto partial = compose_truncated(m, L.coeffs(), k, field);
    FieldElement cur = static_cast<long>(partial.size()) > k
                           ? partial[static_cast<std::size_t>(k)]
                           : FieldElement::zero(field);
    FieldElement ck = -cur * b1_inv.pow(mpz_class(k));
    if (!ck.is_zero()) {
      m.resize(static_cast<std::size_t>(k) + 1, FieldElement::zero(field));
      m[static_cast<std::size_t>(k)] = ck;
    }
  }
  return TruncatedSeries(field, std::move(m), N, false);
}

TruncatedSeries boettcher(const TruncatedSeries& F, const FieldElement& root_choice,
                          std::optional<long> precision, bool skip_char_check) {
  const auto& field = F.field();
  auto low = F.lowest_degree();
  if (!low) fail(Errc::ZeroSeries, "boettcher of the zero series");
  long m = *low;
  if (m < 2) fail(Errc::InvalidArgument, "boettcher needs lowest degree >= 2");
  if (!skip_char_check && field->char_divides(static_cast<unsigned long>(m)))
    fail(Errc::CharDividesDegree, "boettcher: characteristic divides m");
  FieldElement alpha_m = F.coeff(m);
  if (!(alpha_m * root_choice.pow(mpz_class(m - 1))).is_one())
    fail(Errc::BadRootChoice, "root_choice^(m-1) != 1/alpha_m");

  long N = F.exact() ? precision.value_or(kDefaultPrecision)
                     : std::min(F.precision() - m + 1,
                                precision.value_or(kInfinitePrecision));
  N = std::max<long>(N, 1);

  std::vector<FieldElement> beta(2, FieldElement::zero(field));
  beta[1] = root_choice;
  FieldElement slope =
      alpha_m * FieldElement::from_integer(field, m) * root_choice.pow(mpz_class(m - 1));
  for (long r = 1; r + 1 <= N; ++r) {
    // coefficient of X^(m+r) on both sides of F o L = L o X^m
    auto lhs_vec = compose_truncated(F.coeffs(), beta, m + r, field);
    FieldElement lhs = static_cast<long>(lhs_vec.size()) > m + r
                           ? lhs_vec[static_cast<std::size_t>(m + r)]
                           : FieldElement::zero(field);
    FieldElement rhs = FieldElement::zero(field);
    if (r % m == 0) {
      long j = 1 + r / m;
      if (j < static_cast<long>(beta.size())) rhs = beta[static_cast<std::size_t>(j)];
    }
    FieldElement delta = rhs - lhs;
    if (slope.is_zero()) {
      if (!delta.is_zero())
        fail(Errc::NoSolution, "boettcher recursion inconsistent (characteristic divides m)");
      continue;
    }
    FieldElement next = delta / slope;
    if (!next.is_zero()) {
      beta.resize(static_cast<std::size_t>(r) + 2, FieldElement::zero(field));
      beta[static_cast<std::size_t>(r) + 1] = next;
    }
  }
  return TruncatedSeries(field, std::move(beta), N, false);
}

GapStat gap_stat(const TruncatedSeries& H) {
  long first = -1, second = -1;
  for (std::size_t i = 1; i < H.coeffs().size(); ++i) {
    if (H.coeffs()[i].is_zero()) continue;
    if (first < 0) {
      first = static_cast<long>(i);
    } else {
      second = static_cast<long>(i);
      break;
    }
  }
  if (first < 0) fail(Errc::ZeroSeries, "gap_stat of a zero-to-precision series");
  if (second < 0) return {true, 0, !H.exact()};
  return {false, static_cast<unsigned long>(second - first), false};
}

namespace {

// numerator / denominator as a series, den[0] != 0, truncated at N.
TruncatedSeries series_quotient(const std::vector<FieldElement>& num,
                                const std::vector<FieldElement>& den, long N,
                                const FieldSpecPtr& field) {
  std::vector<FieldElement> d = den;
  trim(d);
  if (d.empty() || d[0].is_zero())
    fail(Errc::InvalidArgument, "series division needs a unit constant term");
  if (d.size() == 1) {
    // exact: polynomial divided by a constant
    std::vector<FieldElement> q = num;
    FieldElement inv0 = d[0].inv();
    for (auto& c : q) c = inv0 * c;
    trim(q);
    return TruncatedSeries(field, std::move(q),
                           std::max<long>(1, static_cast<long>(q.size()) - 1), true);
  }
  FieldElement inv0 = d[0].inv();
  std::vector<FieldElement> inv(static_cast<std::size_t>(N) + 1,
                                FieldElement::zero(field));
  inv[0] = inv0;
  for (long k = 1; k <= N; ++k) {
    FieldElement acc = FieldElement::zero(field);
    for (long j = 1; j <= k && j < static_cast<long>(d.size()); ++j)
      acc += d[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
    inv[static_cast<std::size_t>(k)] = -inv0 * acc;
  }
  auto q = mul_truncated(num, inv, N, field);
  return TruncatedSeries(field, std::move(q), N, false);
}

std::vector<FieldElement> reversed_coeffs(const Polynomial& P) {
  std::vector<FieldElement> out(P.coeffs().rbegin(), P.coeffs().rend());
  return out;
}

}  // namespace

TruncatedSeries reciprocal_conjugate(const RationalFunction& F, long precision) {
  long m = F.num().degree() - F.den().degree();
  if (m < 2)
    fail(Errc::DegreeConditionViolated,
         "reciprocal conjugate needs deg(num) - deg(den) >= 2");
  const auto& field = F.field();
  // 1/F(1/X) = X^m * rev(den) / rev(num)
  std::vector<FieldElement> num(static_cast<std::size_t>(m), FieldElement::zero(field));
  auto rev_den = reversed_coeffs(F.den());
  num.insert(num.end(), rev_den.begin(), rev_den.end());
  auto rev_num = reversed_coeffs(F.num());
  return series_quotient(num, rev_num, precision, field);
}

TruncatedSeries reciprocal_conjugate(const Polynomial& F, long precision) {
  return reciprocal_conjugate(RationalFunction(F), precision);
}

TruncatedSeries moebius_to_zero(const RationalFunction& F, const FixedPoint& beta,
                                long precision) {
  if (beta.at_infinity) return reciprocal_conjugate(F, precision);
  const auto& field = F.field();
  FieldElement denom_at = F.den().evaluate(beta.value);
  if (denom_at.is_zero())
    fail(Errc::NotAFixedPoint, "beta is a pole, not a fixed point");
  if (F.num().evaluate(beta.value) != beta.value * denom_at)
    fail(Errc::NotAFixedPoint, "F(beta) != beta");
  Polynomial num_shift = F.num().shifted(beta.value) -
                         beta.value * F.den().shifted(beta.value);
  Polynomial den_shift = F.den().shifted(beta.value);
  // local degree at beta
  long val = 0;
  while (val <= num_shift.degree() &&
         num_shift.coeff(static_cast<std::size_t>(val)).is_zero())
    ++val;
  if (num_shift.is_zero() || val < 1)
    fail(Errc::NotAFixedPoint, "inconsistent shift");
  if (val == 1)
    fail(Errc::RamificationOne, "fixed point has local degree 1");
  return series_quotient(num_shift.coeffs(), den_shift.coeffs(), precision, field);
}

std::string to_string(const TruncatedSeries& s) {
  std::vector<std::string> cs;
  std::vector<bool> nz;
  for (const auto& c : s.coeffs()) {
    cs.push_back(to_string(c));
    nz.push_back(!c.is_zero());
  }
  // series render low-to-high
  std::string out;
  for (std::size_t idx = 0; idx < cs.size(); ++idx) {
    if (!nz[idx]) continue;
    std::string c = cs[idx];
    bool neg = !c.empty() && c[0] == '-' &&
               c.find_first_of("+*", 1) == std::string::npos &&
               c.find('-', 1) == std::string::npos;
    std::string mag = neg ? c.substr(1) : c;
    std::string sep = out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string xpow = idx == 1 ? "X" : "X^" + std::to_string(idx);
    std::string term;
    if (idx == 0) {
      term = mag;
    } else if (mag == "1") {
      term = xpow;
    } else {
      term = (detail::render_needs_parens(mag) ? "(" + mag + ")" : mag) + "*" + xpow;
    }
    out += sep + term;
  }
  if (out.empty()) out = "0";
  if (!s.exact())
    out += " + O(X^" + std::to_string(s.precision() + 1) + ")";
  return out;
}

}  // namespace compsemi
