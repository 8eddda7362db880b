#include "compsemi/semigroup.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <unordered_map>

#include "fingerprint.hpp"
#include "u64arith.hpp"

namespace compsemi {

namespace {

template <typename T>
T fold_word(const Word& w, const T& F, const T& G) {
  w.validate();
  T acc = w.letters.back() == 'F' ? F : G;
  for (std::size_t i = w.letters.size() - 1; i-- > 0;) {
    const T& letter = w.letters[i] == 'F' ? F : G;
    acc = compose(letter, acc);
  }
  return acc;
}

unsigned long checked_mul(unsigned long a, unsigned long b) {
  if (b != 0 && a > (1ul << 62) / b) throw Error("degree overflow");
  return a * b;
}

}  // namespace

unsigned long word_degree(const Word& w, unsigned long degF, unsigned long degG) {
  unsigned long d = 1;
  for (char c : w.letters) d = checked_mul(d, c == 'F' ? degF : degG);
  return d;
}

Polynomial eval_word(const Word& w, const Polynomial& F, const Polynomial& G) {
  return fold_word(w, F, G);
}

RationalFunction eval_word(const Word& w, const RationalFunction& F,
                           const RationalFunction& G) {
  return fold_word(w, F, G);
}

TruncatedSeries eval_word(const Word& w, const TruncatedSeries& F,
                          const TruncatedSeries& G) {
  w.validate();
  TruncatedSeries acc = w.letters.back() == 'F' ? F : G;
  for (std::size_t i = w.letters.size() - 1; i-- > 0;) {
    const TruncatedSeries& letter = w.letters[i] == 'F' ? F : G;
    acc = s_compose(letter, acc);
  }
  return acc;
}

bool verify_relation(const Relation& rel, const Polynomial& F, const Polynomial& G) {
  if (rel.lhs == rel.rhs) return true;
  return eval_word(rel.lhs, F, G) == eval_word(rel.rhs, F, G);
}

bool verify_relation(const Relation& rel, const RationalFunction& F,
                     const RationalFunction& G) {
  if (rel.lhs == rel.rhs) return true;
  return eval_word(rel.lhs, F, G) == eval_word(rel.rhs, F, G);
}

bool verify_relation_mod(const Relation& rel, const TruncatedSeries& F,
                         const TruncatedSeries& G, long N) {
  if (rel.lhs == rel.rhs) return true;
  return agree_mod(eval_word(rel.lhs, F, G), eval_word(rel.rhs, F, G), N);
}

Relation make_trimmed_relation(Word lhs, Word rhs, const Polynomial& F,
                               const Polynomial& G) {
  if (lhs.letters == rhs.letters)
    fail(Errc::InvalidArgument, "relation needs distinct words");
  // unconditional right-cancellation
  while (!lhs.letters.empty() && !rhs.letters.empty() &&
         lhs.letters.back() == rhs.letters.back()) {
    lhs.letters.pop_back();
    rhs.letters.pop_back();
  }
  if (lhs.letters.empty() || rhs.letters.empty())
    fail(Errc::InvalidArgument, "words differ by a common suffix only");
  // left-trimming only survives when the stripped equality re-verifies
  while (lhs.letters.size() > 1 && rhs.letters.size() > 1 &&
         lhs.letters.front() == rhs.letters.front()) {
    Word l2(lhs.letters.substr(1));
    Word r2(rhs.letters.substr(1));
    if (l2 == r2) break;
    if (eval_word(l2, F, G) != eval_word(r2, F, G)) break;
    lhs = std::move(l2);
    rhs = std::move(r2);
  }
  unsigned long degF = static_cast<unsigned long>(F.degree());
  unsigned long degG = static_cast<unsigned long>(G.degree());
  unsigned long deg = word_degree(lhs, degF, degG);
  return Relation{std::move(lhs), std::move(rhs), deg};
}

std::vector<Relation> search_relations(const Polynomial& F, const Polynomial& G,
                                       unsigned long degree_bound,
                                       const SearchOptions& opts) {
  if (F.degree() < 2 || G.degree() < 2)
    fail(Errc::InvalidArgument, "search_relations needs deg F, deg G >= 2");
  if (!same_field(F.field(), G.field())) throw FieldMismatch();
  unsigned long degF = static_cast<unsigned long>(F.degree());
  unsigned long degG = static_cast<unsigned long>(G.degree());
  if (degree_bound < checked_mul(degF, degG))
    fail(Errc::BoundTooSmall, "degree bound below deg F * deg G");

  for (unsigned attempt = 0;; ++attempt) {
    auto evaluator = detail::SearchEvaluator::make(F, G, degree_bound, attempt);
    try {
      struct Entry {
        Word word;
        std::vector<std::uint64_t> state;
      };
      std::map<unsigned long, std::vector<Entry>> frontier;
      auto push_letter = [&](char c, unsigned long deg) {
        if (deg <= degree_bound)
          frontier[deg].push_back({Word(std::string(1, c)),
                                   evaluator->letter_state(c)});
      };
      push_letter('F', degF);
      push_letter('G', degG);

      std::vector<Relation> out;
      std::set<std::pair<std::string, std::string>> emitted;

      while (!frontier.empty()) {
        auto node = frontier.extract(frontier.begin());
        unsigned long degree = node.key();
        auto entries = std::move(node.mapped());
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.word < b.word; });

        std::unordered_map<std::string, std::vector<Word>> registry;
        std::vector<Entry> registered;
        for (auto& entry : entries) {
          std::string key = evaluator->exact_mode()
                                ? to_string(eval_word(entry.word, F, G))
                                : detail::state_key(entry.state);
          auto& bucket = registry[key];
          bool matched = false;
          for (const Word& rep : bucket) {
            Relation rel = make_trimmed_relation(rep, entry.word, F, G);
            auto id = std::make_pair(rel.lhs.letters, rel.rhs.letters);
            if (emitted.count(id)) {
              matched = true;  // this cancellation pattern already verified
              break;
            }
            if (verify_relation(rel, F, G)) {
              emitted.insert(id);
              out.push_back(std::move(rel));
              matched = true;
              break;
            }
            // fingerprint false positive: distinct value, same key
          }
          if (!matched) {
            bucket.push_back(entry.word);
            registered.push_back(std::move(entry));
          }
        }

        // expand the registered representatives
        auto expand = [&](const Entry& e) {
          std::vector<std::pair<unsigned long, Entry>> children;
          for (char c : {'F', 'G'}) {
            unsigned long step = c == 'F' ? degF : degG;
            if (degree > degree_bound / step) continue;
            unsigned long child_degree = degree * step;
            if (child_degree > degree_bound) continue;
            children.push_back(
                {child_degree,
                 Entry{Word(std::string(1, c) + e.word.letters),
                       evaluator->extend(c, e.state)}});
          }
          return children;
        };
        if (opts.jobs > 1 && registered.size() > 64) {
          std::size_t chunk = (registered.size() + opts.jobs - 1) / opts.jobs;
          std::vector<std::future<std::vector<std::pair<unsigned long, Entry>>>> futs;
          for (std::size_t start = 0; start < registered.size(); start += chunk) {
            std::size_t end = std::min(start + chunk, registered.size());
            futs.push_back(std::async(std::launch::async, [&, start, end] {
              std::vector<std::pair<unsigned long, Entry>> acc;
              for (std::size_t i = start; i < end; ++i) {
                auto cs = expand(registered[i]);
                acc.insert(acc.end(), std::make_move_iterator(cs.begin()),
                           std::make_move_iterator(cs.end()));
              }
              return acc;
            }));
          }
          for (auto& fut : futs)
            for (auto& [d, e] : fut.get()) frontier[d].push_back(std::move(e));
        } else {
          for (const auto& e : registered)
            for (auto& [d, child] : expand(e)) frontier[d].push_back(std::move(child));
        }
      }

      std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
        if (a.composed_degree != b.composed_degree)
          return a.composed_degree < b.composed_degree;
        if (a.lhs.letters != b.lhs.letters) return a.lhs.letters < b.lhs.letters;
        return a.rhs.letters < b.rhs.letters;
      });
      return out;
    } catch (const detail::FingerprintFailure&) {
      if (attempt + 1 > detail::kMaxFingerprintAttempts)
        throw;  // exact mode cannot raise this; defensive
      continue;
    }
  }
}

Lemma33Params lemma33_params(unsigned long ell, unsigned long m) {
  if (ell < 1 || m < 2) fail(Errc::InvalidArgument, "lemma33_params needs ell >= 1, m >= 2");
  Lemma33Params out;
  unsigned long coprime = ell;
  unsigned long i = 0;
  for (auto f : detail::prime_factors_u64(ell)) {
    if (m % f != 0) continue;
    unsigned long a = 0, rem = ell;
    while (rem % f == 0) { rem /= f; ++a; }
    unsigned long b = 0, mm = m;
    while (mm % f == 0) { mm /= f; ++b; }
    i = std::max(i, (a + b - 1) / b);
    while (coprime % f == 0) coprime /= f;
  }
  out.i = i;
  out.j = 1;
  if (coprime > 1) {
    unsigned long mj = m % coprime;
    unsigned long j = 1;
    while (mj != 1) {
      mj = detail::mulmod(mj, m % coprime, coprime);
      ++j;
      if (j > coprime) fail(Errc::InvalidArgument, "order computation failed");
    }
    out.j = j;
  }
  return out;
}

Relation lemma33_relation(unsigned long r, unsigned long s, unsigned long j,
                          unsigned long min_r) {
  if (s < 1 || j < 1)
    fail(Errc::InvalidArgument, "lemma33_relation needs s >= 1, j >= 1");
  if (r < min_r)
    fail(Errc::InvalidArgument, "lemma33_relation needs r >= i");
  std::string lhs = std::string(r, 'F') + std::string(s, 'G') + std::string(j, 'F');
  std::string rhs = std::string(j + r, 'F') + std::string(s, 'G');
  return Relation{Word(std::move(lhs)), Word(std::move(rhs)), 0};
}

Relation case3_relation(unsigned long i, unsigned long j, unsigned long s,
                        unsigned long ell, unsigned long r_base) {
  if (i < 1 || j < 1 || r_base < 2)
    fail(Errc::InvalidArgument, "case3_relation needs i, j >= 1 and r_base >= 2");
  if (ell < 1 || s < 1 || s % ell != 0)
    fail(Errc::InvalidArgument, "case3_relation needs ell | s");
  // smallest (a, b), a then b, with ell | r^(ia) * (1 + r^(ij) + ... + r^((b-1)ij))
  constexpr unsigned long kBox = 64;
  for (unsigned long a = 1; a <= kBox; ++a) {
    std::uint64_t ra = detail::powmod(r_base % ell, i * a, ell);
    std::uint64_t e = detail::powmod(r_base % ell, i * j, ell);
    std::uint64_t geom = 0, epow = 1 % ell;
    for (unsigned long b = 1; b <= kBox; ++b) {
      geom = detail::addmod(geom, epow, ell);
      epow = detail::mulmod(epow, e, ell);
      if (detail::mulmod(ra, geom, ell) == 0) {
        std::string lhs(a + j * b, 'F');
        std::string rhs = std::string(a, 'F') + std::string(i * b, 'G');
        return Relation{Word(std::move(lhs)), Word(std::move(rhs)), 0};
      }
    }
  }
  fail(Errc::DivisibilityUnsatisfied,
       "no (a, b) within the search box satisfies the divisibility");
}

}  // namespace compsemi
