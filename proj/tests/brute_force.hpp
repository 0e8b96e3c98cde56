#pragma once

// Independent oracle: enumerates every step sequence with its exact
// history-dependent probability. Exponential cost, for tiny n only; used to
// validate the dynamic-programming law.

#include <map>
#include <stdexcept>
#include <vector>

#include "elephant/core.hpp"

namespace elephant::testing {

/// Exact pmf of the d-dimensional walk position after n steps by full
/// enumeration of the (2d)^n step sequences.
inline std::map<std::vector<int>, Rational> brute_force_position_law(
    std::int64_t n, int d, const Rational& p, const std::vector<Rational>& q) {
  if (n > 10) throw std::invalid_argument("brute force: n too large");
  const int dirs = 2 * d;
  std::map<std::vector<int>, Rational> pmf;
  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  const Rational flip = (1 - p) / (dirs - 1);

  while (true) {
    // probability of this sequence under the recall dynamics
    Rational prob = q[static_cast<std::size_t>(seq[0])];
    if (prob != 0) {
      std::vector<int> counts(static_cast<std::size_t>(dirs), 0);
      counts[static_cast<std::size_t>(seq[0])] = 1;
      for (std::int64_t t = 1; t < n && prob != 0; ++t) {
        const int s = seq[static_cast<std::size_t>(t)];
        const Rational same(counts[static_cast<std::size_t>(s)]);
        prob *= (p * same + flip * (Rational(t) - same)) / Rational(t);
        ++counts[static_cast<std::size_t>(s)];
      }
      if (prob != 0) {
        std::vector<int> pos(static_cast<std::size_t>(d), 0);
        for (int s : seq) pos[static_cast<std::size_t>(s / 2)] += (s % 2 == 0) ? 1 : -1;
        pmf[pos] += prob;
      }
    }
    // next sequence
    std::int64_t i = n - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == dirs - 1) seq[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++seq[static_cast<std::size_t>(i)];
  }
  return pmf;
}

}  // namespace elephant::testing
