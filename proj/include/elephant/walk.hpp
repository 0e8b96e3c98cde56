#pragma once

#include <cstdint>
#include <vector>

#include "elephant/core.hpp"
#include "elephant/rng.hpp"

namespace elephant {

/// Direction code c in {0, ..., 2d-1}: axis c/2, sign +1 for even c, -1 for
/// odd c. The probability vector q is ordered (+e1, -e1, ..., +ed, -ed).
struct WalkConfig {
  int d = 1;
  double p = 0.5;
  std::vector<double> q;
  std::int64_t n = 0;
  std::uint64_t seed = 0;

  /// (2dp - 1) / (2d - 1); reduces to 2p - 1 in dimension one.
  double exponent() const { return (2.0 * d * p - 1.0) / (2.0 * d - 1.0); }
  bool superdiffusive() const { return exponent() > 0.5; }
  void validate() const;
};

struct Trajectory {
  int d = 1;
  std::vector<std::uint8_t> steps;  // direction codes, length n

  Eigen::VectorXi endpoint() const;
  /// Materialized lattice positions S_0 ... S_n.
  std::vector<Eigen::VectorXi> positions() const;
};

Eigen::VectorXi direction_vector(int d, int code);

Trajectory simulate_walk(const WalkConfig& config, std::uint64_t replica = 0);

/// Endpoint without keeping the trajectory; scratch avoids reallocation
/// across replicas.
Eigen::VectorXi simulate_endpoint(const WalkConfig& config, std::uint64_t replica,
                                  std::vector<std::uint8_t>& scratch);

VecD normalized_endpoint(const Trajectory& traj, double a);

struct LimitEnsemble {
  int d = 1;
  double a = 0.0;
  std::int64_t n = 0;
  MatD values;  // replicas x d, rows are S_n / n^a
};

LimitEnsemble sample_limit_ensemble(const WalkConfig& config, std::int64_t replicas);

struct EnsembleMoments {
  VecD mean;
  VecD mean_se;
  MatD second;     // empirical E[L L^T]
  MatD second_se;  // entrywise standard errors
  std::int64_t count = 0;
};

EnsembleMoments estimate_limit_moments(const LimitEnsemble& ensemble);

struct FluctuationSample {
  std::vector<double> values;  // sqrt(n^(2a-1)) (S_n/n^a - S_N/N^a) per replica
  double bias_factor = 0.0;    // 1 - (n/N)^(2a-1), never silently absorbed
  double a = 0.0;
};

FluctuationSample fluctuation_sample(const WalkConfig& config, std::int64_t n,
                                     std::int64_t horizon, std::int64_t replicas);

/// Mean of the limit vector: (q_{2k-1} - q_{2k}) / Gamma(1+a) per axis.
VecD predicted_limit_mean(int d, double a, const std::vector<double>& q);

/// Second-moment matrix of the limit, D / Gamma(2a+1) + c I with
/// c = 1 / (2 d a (2a-1) Gamma(2a)), the form consistent with the known
/// one-dimensional second moment 1 / ((2a-1) Gamma(2a)).
MatD predicted_limit_second_moment(int d, double a, const std::vector<double>& q);

}  // namespace elephant
