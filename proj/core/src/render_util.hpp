#pragma once

#include <string>
#include <vector>

namespace compsemi::detail {

inline bool render_needs_parens(const std::string& s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '+' || c == ' ' || c == '*') return true;
    if (c == '-' && i > 0) return true;
  }
  return s[0] == '-';
}

// Dense coefficient list (low-to-high) rendered in the variable `var`,
// highest degree first.
inline std::string render_poly_terms(const std::vector<std::string>& coeffs,
                                     const std::vector<bool>& nonzero,
                                     const std::string& var) {
  std::string out;
  for (std::size_t idx = coeffs.size(); idx-- > 0;) {
    if (!nonzero[idx]) continue;
    const std::string& c = coeffs[idx];
    bool neg = !c.empty() && c[0] == '-' &&
               c.find_first_of("+*", 1) == std::string::npos &&
               c.find('-', 1) == std::string::npos;
    std::string mag = neg ? c.substr(1) : c;
    std::string sep = out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string term;
    if (idx == 0) {
      term = render_needs_parens(mag) ? "(" + mag + ")" : mag;
    } else {
      std::string xpow = idx == 1 ? var : var + "^" + std::to_string(idx);
      if (mag == "1") {
        term = xpow;
      } else {
        term = (render_needs_parens(mag) ? "(" + mag + ")" : mag) + "*" + xpow;
      }
    }
    out += sep + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace compsemi::detail
