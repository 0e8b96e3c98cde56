#pragma once

#include <cstdint>
#include <vector>

#include "elephant/rng.hpp"

namespace elephant {

/// Standard one-sided a-stable variate (Laplace transform exp(-t^a)),
/// Kanter construction.
double sample_stable_positive(double a, Rng& rng);

/// Mittag-Leffler(a) = S^{-a} for S one-sided a-stable; moments
/// E[M^k] = k! / Gamma(1 + ka).
double sample_mittag_leffler(double a, Rng& rng);

/// Truncated series L_q ~ C_1 Z_1 + sum_{j<=J} C_j Z_j with
/// C_j = ML(a) * Beta(1, tau_j - 1)^a and tau_j = tau_{j-1} + G_j,
/// G_j geometric on {1,2,...} with success probability 1-a. This sampler is
/// faithful to each marginal C_j but not to their joint law; the percolated
/// tree is the joint ground truth.
struct ClusterSample {
  std::vector<double> coefficients;  // C_1..C_J
  std::vector<int> signs;            // Z_1..Z_J
  std::vector<std::int64_t> tau;     // 1 = tau_1 < tau_2 < ...
  double partial_sum = 0.0;
  bool marginal_faithful_only = true;
};

ClusterSample sample_cluster_series(double a, double q, int truncation, Rng& rng);

/// Random recursive tree on nodes 1..n with each parent edge kept with
/// probability a. Cluster roots are the nodes whose parent edge was removed
/// (node 1 is always a root).
struct PercolatedRRT {
  std::int64_t n = 0;
  double a = 0.0;
  std::vector<std::int32_t> parent;  // parent[i], 1-based, parent[1] = 0
  std::vector<std::uint8_t> kept;    // kept[i] for the edge above node i
  std::vector<std::int32_t> root;    // cluster root label per node
  std::vector<std::int32_t> roots;   // cluster roots, ascending
  std::vector<std::int64_t> sizes;   // aligned with roots

  std::int64_t root_cluster_size() const { return sizes.empty() ? 0 : sizes.front(); }
};

PercolatedRRT simulate_rrt_percolation(std::int64_t n, double a, std::uint64_t seed,
                                       std::uint64_t replica = 0);

/// Signed sum of cluster sizes: the cluster of node 1 gets a Rademacher(q)
/// sign, every other root an independent Rademacher(1/2) sign in increasing
/// root order. Equal in law to the walk position S_n at a = 2p-1.
std::int64_t reconstruct_walk_from_clusters(const PercolatedRRT& tree, double q, Rng& rng);

}  // namespace elephant
