#pragma once

#include <cstdint>
#include <vector>

#include "elephant/core.hpp"
#include "elephant/rng.hpp"
#include "elephant/walk.hpp"

namespace elephant {

/// Polya-type urn over an even number of colors. Color c corresponds to the
/// walk direction with the same code. A drawn ball is returned together with
/// one ball of the same color (probability p) or of the color shifted by a
/// uniform nonzero power of the cyclic rotation (probability 1-p in total).
struct UrnConfig {
  int colors = 2;
  double p = 0.5;
  Eigen::VectorXi initial;
  std::int64_t n = 0;  // number of draws
  std::uint64_t seed = 0;

  void validate() const;
};

struct UrnPath {
  Eigen::MatrixXi compositions;  // (n+1) x colors, row t = U(t)
  std::vector<int> drawn;        // color drawn at each step
  std::vector<int> shift;        // applied rotation power (0 = same color)
};

UrnPath simulate_urn(const UrnConfig& config, std::uint64_t replica = 0);

/// Final composition only, 64-bit counts for long runs.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> simulate_urn_endpoint(
    const UrnConfig& config, std::uint64_t replica);

/// (U1-U2, U3-U4, ...): projects a 2d-color composition to a walk position.
Eigen::VectorXi urn_to_walk_position(const Eigen::VectorXi& composition);

/// Walk endpoint S_n sampled through the urn encoding: the initial ball is
/// drawn from q and n-1 draws follow (the ball added at draw t is the walk
/// step t+1, so n balls total encode S_n).
Eigen::VectorXi urn_walk_endpoint(const WalkConfig& config, std::uint64_t replica);

/// Classical identity-replacement 2-color urn started from (1,1); the path
/// rows are (D1(t), D2(t)) for t = 1..n with D1(t)+D2(t) = t+1.
struct SubtreeSplit {
  Eigen::MatrixXi path;  // n x 2
};

SubtreeSplit simulate_subtree_split(std::int64_t n, std::uint64_t seed,
                                    std::uint64_t replica = 0);

/// Normalized deviation (U(n) - n v1) / n^a of a single urn run.
VecD urn_normalized_deviation(const UrnConfig& config, double a, std::uint64_t replica);

}  // namespace elephant
