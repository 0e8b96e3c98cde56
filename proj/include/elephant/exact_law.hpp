#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// Exact law of the one-dimensional walk position S_n, stored over the
/// number of right steps r (S_n = 2r - n). Probabilities are exact rationals
/// and sum to exactly 1.
struct ExactLaw1D {
  std::int64_t n = 0;
  std::vector<Rational> pmf;  // index r = 0..n

  Rational prob_position(std::int64_t s) const;
  /// (position, probability) pairs with nonzero mass, ascending.
  std::vector<std::pair<std::int64_t, Rational>> support() const;
};

/// DP on the right-step count: P(r -> r+1 at time t) = (p r + (1-p)(t-r)) / t.
/// Only n <= 25 is accepted; beyond that the oracle refuses rather than
/// approximating.
ExactLaw1D exact_law_1d(std::int64_t n, const Rational& p,
                        const Rational& q_right, const Rational& q_left);

/// Exact joint law of the 2d direction counts after n steps.
struct ExactLawCounts {
  int d = 1;
  std::int64_t n = 0;
  std::map<std::vector<int>, Rational> pmf;
};

ExactLawCounts exact_law_counts(std::int64_t n, int d, const Rational& p,
                                const std::vector<Rational>& q);

/// Pushforward of a counts law to walk positions via componentwise
/// differences.
std::map<std::vector<int>, Rational> position_pushforward(const ExactLawCounts& law);

}  // namespace elephant
