#include "elephant/urn.hpp"

#include <cmath>
#include <stdexcept>

namespace elephant {

void UrnConfig::validate() const {
  if (colors < 2 || colors % 2 != 0)
    throw std::invalid_argument("urn: colors must be even and >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("urn: p must lie in [0,1]");
  if (n < 0) throw std::invalid_argument("urn: draw count must be >= 0");
  if (initial.size() != colors)
    throw std::invalid_argument("urn: initial composition must have one entry per color");
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < initial.size(); ++i) {
    if (initial(i) < 0) throw std::invalid_argument("urn: negative initial count");
    total += initial(i);
  }
  if (total == 0) throw std::invalid_argument("urn: the urn must start with at least one ball");
}

namespace {

template <class Counts>
int draw_color(const Counts& counts, std::int64_t total, Rng& rng) {
  std::int64_t u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
  int c = 0;
  while (u >= counts[c]) {
    u -= counts[c];
    ++c;
  }
  return c;
}

}  // namespace

UrnPath simulate_urn(const UrnConfig& config, std::uint64_t replica) {
  config.validate();
  Rng rng(config.seed, replica);
  const int colors = config.colors;

  UrnPath path;
  path.compositions.resize(config.n + 1, colors);
  path.drawn.reserve(static_cast<std::size_t>(config.n));
  path.shift.reserve(static_cast<std::size_t>(config.n));

  std::vector<std::int64_t> counts(colors);
  std::int64_t total = 0;
  for (int c = 0; c < colors; ++c) {
    counts[c] = config.initial(c);
    total += counts[c];
    path.compositions(0, c) = config.initial(c);
  }

  for (std::int64_t t = 0; t < config.n; ++t) {
    const int drawn = draw_color(counts, total, rng);
    int shift = 0;
    if (!rng.bernoulli(config.p))
      shift = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(colors - 1)));
    const int added = (drawn + shift) % colors;
    ++counts[added];
    ++total;
    path.drawn.push_back(drawn);
    path.shift.push_back(shift);
    for (int c = 0; c < colors; ++c)
      path.compositions(t + 1, c) = static_cast<int>(counts[c]);
  }
  return path;
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> simulate_urn_endpoint(
    const UrnConfig& config, std::uint64_t replica) {
  config.validate();
  Rng rng(config.seed, replica);
  const int colors = config.colors;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> counts(colors);
  std::int64_t total = 0;
  for (int c = 0; c < colors; ++c) {
    counts(c) = config.initial(c);
    total += counts(c);
  }
  for (std::int64_t t = 0; t < config.n; ++t) {
    const int drawn = draw_color(counts, total, rng);
    int added = drawn;
    if (!rng.bernoulli(config.p))
      added = (drawn + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(colors - 1)))) %
              colors;
    ++counts(added);
    ++total;
  }
  return counts;
}

Eigen::VectorXi urn_to_walk_position(const Eigen::VectorXi& composition) {
  if (composition.size() % 2 != 0)
    throw std::invalid_argument("urn_to_walk_position: composition length must be even");
  const Eigen::Index d = composition.size() / 2;
  Eigen::VectorXi pos(d);
  for (Eigen::Index i = 0; i < d; ++i) pos(i) = composition(2 * i) - composition(2 * i + 1);
  return pos;
}

Eigen::VectorXi urn_walk_endpoint(const WalkConfig& config, std::uint64_t replica) {
  config.validate();
  Rng rng(config.seed, replica);
  const int colors = 2 * config.d;
  std::vector<std::int64_t> counts(colors, 0);
  counts[static_cast<std::size_t>(rng.discrete(config.q))] = 1;
  std::int64_t total = 1;
  for (std::int64_t t = 1; t < config.n; ++t) {
    const int drawn = draw_color(counts, total, rng);
    int added = drawn;
    if (!rng.bernoulli(config.p))
      added = (drawn + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(colors - 1)))) %
              colors;
    ++counts[added];
    ++total;
  }
  Eigen::VectorXi pos(config.d);
  for (int i = 0; i < config.d; ++i)
    pos(i) = static_cast<int>(counts[2 * i] - counts[2 * i + 1]);
  return pos;
}

SubtreeSplit simulate_subtree_split(std::int64_t n, std::uint64_t seed,
                                    std::uint64_t replica) {
  if (n < 1) throw std::invalid_argument("subtree split: n must be >= 1");
  Rng rng(seed, replica);
  SubtreeSplit out;
  out.path.resize(n, 2);
  std::int64_t d1 = 1, d2 = 1;
  out.path(0, 0) = 1;
  out.path(0, 1) = 1;
  for (std::int64_t t = 1; t < n; ++t) {
    const std::int64_t u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d1 + d2)));
    if (u < d1)
      ++d1;
    else
      ++d2;
    out.path(t, 0) = static_cast<int>(d1);
    out.path(t, 1) = static_cast<int>(d2);
  }
  return out;
}

VecD urn_normalized_deviation(const UrnConfig& config, double a, std::uint64_t replica) {
  const auto counts = simulate_urn_endpoint(config, replica);
  const double scale = std::pow(static_cast<double>(config.n), a);
  VecD out(config.colors);
  const double v1 = 1.0 / static_cast<double>(config.colors);
  for (int c = 0; c < config.colors; ++c)
    out(c) = (static_cast<double>(counts(c)) - static_cast<double>(config.n) * v1) / scale;
  return out;
}

}  // namespace elephant
