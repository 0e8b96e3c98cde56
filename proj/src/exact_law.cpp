#include "elephant/exact_law.hpp"

#include <stdexcept>

namespace elephant {

Rational ExactLaw1D::prob_position(std::int64_t s) const {
  // s = 2r - n
  if ((s + n) % 2 != 0) return Rational(0);
  const std::int64_t r = (s + n) / 2;
  if (r < 0 || r > n) return Rational(0);
  return pmf[static_cast<std::size_t>(r)];
}

std::vector<std::pair<std::int64_t, Rational>> ExactLaw1D::support() const {
  std::vector<std::pair<std::int64_t, Rational>> out;
  for (std::int64_t r = 0; r <= n; ++r)
    if (pmf[static_cast<std::size_t>(r)] != 0)
      out.emplace_back(2 * r - n, pmf[static_cast<std::size_t>(r)]);
  return out;
}

ExactLaw1D exact_law_1d(std::int64_t n, const Rational& p,
                        const Rational& q_right, const Rational& q_left) {
  if (n < 1) throw std::invalid_argument("exact_law_1d: n must be >= 1");
  if (n > 25) throw std::invalid_argument("exact_law_1d: n too large for exact mode (max 25)");
  if (p < 0 || p > 1) throw std::invalid_argument("exact_law_1d: p must lie in [0,1]");
  if (q_right < 0 || q_left < 0 || q_right + q_left != 1)
    throw std::invalid_argument("exact_law_1d: q must be a probability pair");

  std::vector<Rational> f(static_cast<std::size_t>(n) + 1, Rational(0));
  f[1] = q_right;
  f[0] = q_left;
  for (std::int64_t t = 1; t < n; ++t) {
    std::vector<Rational> g(static_cast<std::size_t>(n) + 1, Rational(0));
    const Rational tt(t);
    for (std::int64_t r = 0; r <= t; ++r) {
      const Rational& mass = f[static_cast<std::size_t>(r)];
      if (mass == 0) continue;
      const Rational pr_right = (p * r + (1 - p) * (t - r)) / tt;
      g[static_cast<std::size_t>(r + 1)] += mass * pr_right;
      g[static_cast<std::size_t>(r)] += mass * (1 - pr_right);
    }
    f = std::move(g);
  }
  ExactLaw1D law;
  law.n = n;
  law.pmf = std::move(f);
  return law;
}

ExactLawCounts exact_law_counts(std::int64_t n, int d, const Rational& p,
                                const std::vector<Rational>& q) {
  if (d < 1 || d > 2) throw std::invalid_argument("exact_law_counts: d must be 1 or 2");
  if (n < 1 || n > 12)
    throw std::invalid_argument("exact_law_counts: state space guard (need n <= 12)");
  if (p < 0 || p > 1) throw std::invalid_argument("exact_law_counts: p must lie in [0,1]");
  const int colors = 2 * d;
  if (static_cast<int>(q.size()) != colors)
    throw std::invalid_argument("exact_law_counts: q must have length 2d");
  Rational qsum(0);
  for (const auto& qi : q) {
    if (qi < 0) throw std::invalid_argument("exact_law_counts: q entries must be >= 0");
    qsum += qi;
  }
  if (qsum != 1) throw std::invalid_argument("exact_law_counts: q must sum to 1 exactly");

  std::map<std::vector<int>, Rational> f;
  for (int c = 0; c < colors; ++c) {
    if (q[static_cast<std::size_t>(c)] == 0) continue;
    std::vector<int> state(colors, 0);
    state[static_cast<std::size_t>(c)] = 1;
    f[state] += q[static_cast<std::size_t>(c)];
  }
  const Rational flip = (1 - p) / (colors - 1);
  for (std::int64_t t = 1; t < n; ++t) {
    std::map<std::vector<int>, Rational> g;
    const Rational tt(t);
    for (const auto& [state, mass] : f) {
      for (int j = 0; j < colors; ++j) {
        const Rational nj(state[static_cast<std::size_t>(j)]);
        const Rational pr = (p * nj + flip * (tt - nj)) / tt;
        if (pr == 0) continue;
        std::vector<int> next = state;
        ++next[static_cast<std::size_t>(j)];
        g[next] += mass * pr;
      }
    }
    f = std::move(g);
  }
  ExactLawCounts law;
  law.d = d;
  law.n = n;
  law.pmf = std::move(f);
  return law;
}

std::map<std::vector<int>, Rational> position_pushforward(const ExactLawCounts& law) {
  std::map<std::vector<int>, Rational> out;
  for (const auto& [counts, mass] : law.pmf) {
    std::vector<int> pos(static_cast<std::size_t>(law.d));
    for (int i = 0; i < law.d; ++i)
      pos[static_cast<std::size_t>(i)] = counts[static_cast<std::size_t>(2 * i)] -
                                         counts[static_cast<std::size_t>(2 * i + 1)];
    out[pos] += mass;
  }
  return out;
}

}  // namespace elephant
