#pragma once

#include <cstdint>
#include <vector>

#include "elephant/core.hpp"
#include "elephant/rng.hpp"

namespace elephant {

enum class MapVariant { Scalar1D, WVector, YColorVector };

/// Empirical sample standing in for a distribution inside fixed-point
/// iteration. Rows are particles.
struct ParticlePopulation {
  MapVariant variant = MapVariant::Scalar1D;
  int d = 1;
  double a = 0.0;
  MatD values;

  std::int64_t size() const { return values.rows(); }
  int dim() const { return static_cast<int>(values.cols()); }
  void validate() const;
};

/// One-dimensional map: x' = V^a x1 + (2 xi_p - 1)(1-V)^a x2 with
/// p = (1+a)/2, x1 and x2 resampled with replacement.
void iterate_map_1d(ParticlePopulation& pop, int steps, Rng& rng);

/// (2d-1)-dimensional map: w' = V^a w1 + (1-V)^a K^k w2 where K^0 has
/// probability p = ((2d-1)a+1)/(2d) and each nonzero power (1-p)/(2d-1).
void iterate_map_W(ParticlePopulation& pop, int steps, Rng& rng);

/// Coupled color-indexed system: one population of 2d-vectors per starting
/// color; a single (V, shift, resample pair) is shared across all colors in
/// each update, and the shift branch reads population (k + s) mod 2d.
void iterate_map_Y(std::vector<ParticlePopulation>& pops, int steps, Rng& rng);

/// Exact empirical 2-Wasserstein distance of two equal-size scalar samples
/// (sorted-sample coupling). Unequal sizes are rejected.
double wasserstein2_1d(const std::vector<double>& a, const std::vector<double>& b);
double wasserstein2_1d(const VecD& a, const VecD& b);

/// Coordinate-wise W2 for vector populations.
VecD wasserstein2_columns(const MatD& a, const MatD& b);

/// Energy distance between two vector samples.
double energy_distance(const MatD& a, const MatD& b);

struct ContractionReport {
  double pre_distance = 0.0;
  double post_distance = 0.0;
  double ratio = 0.0;            // mean over trials
  double max_ratio = 0.0;
  double theoretical_bound = 0.0;  // sqrt(2/(1+2a))
  int trials = 0;
  std::vector<double> ratios;
};

/// Applies one synchronous-coupling step of the 1-d map to both populations
/// (shared V, xi, resampling indices on quantile-paired particles) and
/// reports the W2 contraction ratio. Populations must share their mean
/// within 4 standard errors; a zero pre-distance trial is skipped.
ContractionReport contraction_estimate(double a, const std::vector<double>& pop_a,
                                       const std::vector<double>& pop_b, int trials,
                                       Rng& rng);

}  // namespace elephant
