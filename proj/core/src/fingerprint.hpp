#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "compsemi/poly.hpp"

namespace compsemi::detail {

/// Raised when a modular fingerprint homomorphism cannot be built or applied
/// (e.g. a denominator vanishes modulo the chosen prime); the search retries
/// with the next prime and eventually falls back to exact keys.
class FingerprintFailure : public Error {
public:
  using Error::Error;
};

/// Per-word search state: images of the composed map under a fixed ring
/// homomorphism, evaluated at fixed points.  Composing on the left is a
/// cheap state transition; equal polynomials always produce equal states, so
/// only state collisions need exact re-verification.
class SearchEvaluator {
public:
  virtual ~SearchEvaluator() = default;

  /// State of a single-letter word.
  virtual std::vector<std::uint64_t> letter_state(char letter) const = 0;
  /// State of (letter o w) given the state of w.
  virtual std::vector<std::uint64_t> extend(
      char letter, const std::vector<std::uint64_t>& state) const = 0;
  /// Exact mode: states are empty and dedup keys come from the exact
  /// composed polynomial.
  virtual bool exact_mode() const { return false; }

  /// attempt selects successive fingerprint primes; attempts past
  /// kMaxFingerprintAttempts (or unsupported coefficient fields) produce the
  /// exact-mode evaluator.
  static std::unique_ptr<SearchEvaluator> make(const Polynomial& F,
                                               const Polynomial& G,
                                               unsigned long degree_bound,
                                               unsigned attempt);
};

inline constexpr unsigned kMaxFingerprintAttempts = 6;

std::string state_key(const std::vector<std::uint64_t>& state);

}  // namespace compsemi::detail
