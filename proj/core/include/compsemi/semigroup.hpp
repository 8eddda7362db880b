#pragma once

#include <vector>

#include "compsemi/poly.hpp"
#include "compsemi/ratfun.hpp"
#include "compsemi/series.hpp"
#include "compsemi/word.hpp"

namespace compsemi {

/// Exact composition of the word in (F, G), folding right-to-left.
Polynomial eval_word(const Word& w, const Polynomial& F, const Polynomial& G);
RationalFunction eval_word(const Word& w, const RationalFunction& F,
                           const RationalFunction& G);
TruncatedSeries eval_word(const Word& w, const TruncatedSeries& F,
                          const TruncatedSeries& G);

bool verify_relation(const Relation& rel, const Polynomial& F, const Polynomial& G);
bool verify_relation(const Relation& rel, const RationalFunction& F,
                     const RationalFunction& G);
/// Verification modulo X^(N+1) (capped by the operands' reliable precision).
bool verify_relation_mod(const Relation& rel, const TruncatedSeries& F,
                         const TruncatedSeries& G, long N);

/// Right-cancellation is applied unconditionally; a common leftmost letter is
/// stripped only when the stripped equality re-verifies exactly.
Relation make_trimmed_relation(Word lhs, Word rhs, const Polynomial& F,
                               const Polynomial& G);

/// Composed degree of a word in letters of the given degrees.
unsigned long word_degree(const Word& w, unsigned long degF, unsigned long degG);

struct SearchOptions {
  unsigned jobs = 1;
};

/// Breadth-first enumeration of compositions in increasing degree order with
/// canonical-form deduplication; every collision of composed values yields a
/// verified trimmed Relation.  Output is sorted by composed degree then
/// lexicographically, and is deterministic (independent of jobs).
std::vector<Relation> search_relations(const Polynomial& F, const Polynomial& G,
                                       unsigned long degree_bound,
                                       const SearchOptions& opts = {});

struct Lemma33Params {
  unsigned long i = 0;
  unsigned long j = 1;
};

/// Lexicographically smallest (i, j) with ell | m^i (m^j - 1): i absorbs the
/// part of ell sharing prime factors with m, j is the multiplicative order of
/// m modulo the coprime part.
Lemma33Params lemma33_params(unsigned long ell, unsigned long m);

/// The word pair F^r o G^s o F^j = F^(j+r) o G^s.  min_r carries the i from
/// lemma33_params when the caller wants the precondition r >= i enforced.
Relation lemma33_relation(unsigned long r, unsigned long s, unsigned long j,
                          unsigned long min_r = 0);

/// The relation F^(a+jb) = F^a o G^(ib) for pairs F = gamma A^(i),
/// G = zeta A^(j): searches the smallest (a, b) with
/// ell | r_base^(ia) * (1 + r_base^(ij) + ... + r_base^((b-1)ij)), where
/// r_base = deg A and ell is the order of the scalar linking F^(j) to G^(i)
/// (a divisor of s, the scaling exponent with gamma^s = zeta^s = 1).
Relation case3_relation(unsigned long i, unsigned long j, unsigned long s,
                        unsigned long ell, unsigned long r_base);

}  // namespace compsemi
