#include "elephant/clusters.hpp"

#include <cmath>
#include <stdexcept>

namespace elephant {

double sample_stable_positive(double a, Rng& rng) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("stable sampler: a must lie in (0,1)");
  const double theta = 3.14159265358979323846 * rng.uniform_pos();
  const double w = rng.exponential();
  const double num =
      std::sin((1.0 - a) * theta) * std::pow(std::sin(a * theta), a / (1.0 - a));
  const double den = std::pow(std::sin(theta), 1.0 / (1.0 - a));
  const double a_theta = num / den;
  return std::pow(a_theta / w, (1.0 - a) / a);
}

double sample_mittag_leffler(double a, Rng& rng) {
  return std::pow(sample_stable_positive(a, rng), -a);
}

ClusterSample sample_cluster_series(double a, double q, int truncation, Rng& rng) {
  if (truncation < 1) throw std::invalid_argument("cluster series: truncation must be >= 1");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("cluster series: a must lie in (0,1)");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("cluster series: q must lie in [0,1]");
  ClusterSample out;
  out.coefficients.reserve(static_cast<std::size_t>(truncation));
  out.signs.reserve(static_cast<std::size_t>(truncation));
  out.tau.reserve(static_cast<std::size_t>(truncation));
  std::int64_t tau = 1;
  for (int j = 1; j <= truncation; ++j) {
    if (j > 1) tau += rng.geometric_from_failure(a);
    double beta = 1.0;  // Beta(1,0) is the constant 1 (tau = 1 only for j = 1)
    if (tau > 1) {
      const double m = static_cast<double>(tau - 1);
      beta = 1.0 - std::pow(rng.uniform_pos(), 1.0 / m);
    }
    const double c = sample_mittag_leffler(a, rng) * std::pow(beta, a);
    const int z = (j == 1) ? rng.rademacher(q) : rng.rademacher(0.5);
    out.coefficients.push_back(c);
    out.signs.push_back(z);
    out.tau.push_back(tau);
    out.partial_sum += c * z;
  }
  return out;
}

PercolatedRRT simulate_rrt_percolation(std::int64_t n, double a, std::uint64_t seed,
                                       std::uint64_t replica) {
  if (n < 1) throw std::invalid_argument("rrt: n must be >= 1");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("rrt: a must lie in [0,1]");
  Rng rng(seed, replica);
  PercolatedRRT tree;
  tree.n = n;
  tree.a = a;
  tree.parent.assign(static_cast<std::size_t>(n) + 1, 0);
  tree.kept.assign(static_cast<std::size_t>(n) + 1, 0);
  tree.root.assign(static_cast<std::size_t>(n) + 1, 0);
  tree.root[1] = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    const auto parent = static_cast<std::int32_t>(1 + rng.below(static_cast<std::uint64_t>(i - 1)));
    const bool keep = rng.bernoulli(a);
    tree.parent[static_cast<std::size_t>(i)] = parent;
    tree.kept[static_cast<std::size_t>(i)] = keep ? 1 : 0;
    tree.root[static_cast<std::size_t>(i)] =
        keep ? tree.root[static_cast<std::size_t>(parent)] : static_cast<std::int32_t>(i);
  }
  // roots appear in ascending label order; node i is a root iff root[i] == i
  std::vector<std::int64_t> count(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 1; i <= n; ++i) ++count[static_cast<std::size_t>(tree.root[static_cast<std::size_t>(i)])];
  for (std::int64_t i = 1; i <= n; ++i) {
    if (tree.root[static_cast<std::size_t>(i)] == i) {
      tree.roots.push_back(static_cast<std::int32_t>(i));
      tree.sizes.push_back(count[static_cast<std::size_t>(i)]);
    }
  }
  return tree;
}

std::int64_t reconstruct_walk_from_clusters(const PercolatedRRT& tree, double q, Rng& rng) {
  if (tree.roots.empty()) throw std::invalid_argument("reconstruct: empty tree");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < tree.roots.size(); ++i) {
    const int sign = (i == 0) ? rng.rademacher(q) : rng.rademacher(0.5);
    sum += sign * tree.sizes[i];
  }
  return sum;
}

}  // namespace elephant
