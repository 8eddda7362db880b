#pragma once

#include <string>

#include "compsemi/errors.hpp"

namespace compsemi {

/// Nonempty word over the two-letter alphabet {F, G}, letters read
/// outermost-to-innermost: the rightmost letter is applied first, so
/// "FG" denotes F o G.
struct Word {
  std::string letters;

  Word() = default;
  explicit Word(std::string s) : letters(std::move(s)) { validate(); }

  void validate() const {
    if (letters.empty()) fail(Errc::InvalidArgument, "empty word");
    for (char c : letters)
      if (c != 'F' && c != 'G')
        fail(Errc::InvalidArgument, "word letters must be F or G");
  }

  std::size_t size() const { return letters.size(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    return a.letters < b.letters;
  }
};

/// Verified pair of distinct words with equal composition.  Stored in trimmed
/// form: the last (innermost) letters differ.
struct Relation {
  Word lhs;
  Word rhs;
  unsigned long composed_degree = 0;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

}  // namespace compsemi
