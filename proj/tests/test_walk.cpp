#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elephant/exact_law.hpp"
#include "elephant/stats.hpp"
#include "elephant/walk.hpp"

using namespace elephant;

TEST_CASE("frozen and alternating walks") {
  // p=1, q=(1,0): the first step locks the direction
  WalkConfig frozen{1, 1.0, {1.0, 0.0}, 100, 7};
  CHECK(simulate_walk(frozen).endpoint()(0) == 100);

  // p=0 in dimension 1 forces a flip of every recalled step; S_2 = 0 always
  WalkConfig flipper{1, 0.0, {1.0, 0.0}, 2, 0};
  for (std::uint64_t r = 0; r < 32; ++r) {
    std::vector<std::uint8_t> scratch;
    CHECK(simulate_endpoint(flipper, r, scratch)(0) == 0);
  }
}

TEST_CASE("trajectory invariants") {
  WalkConfig cfg{2, 0.8, {0.25, 0.25, 0.25, 0.25}, 500, 42};
  const Trajectory traj = simulate_walk(cfg);
  const auto pos = traj.positions();
  REQUIRE(pos.size() == 501);
  for (std::size_t t = 1; t < pos.size(); ++t)
    CHECK((pos[t] - pos[t - 1]).cwiseAbs().sum() == 1);  // one unit step in L1
  CHECK(pos.back().cwiseAbs().sum() <= 500);
}

TEST_CASE("bit reproducibility and stream separation") {
  WalkConfig cfg{1, 0.87, {0.9, 0.1}, 2000, 123};
  const Trajectory a = simulate_walk(cfg, 5);
  const Trajectory b = simulate_walk(cfg, 5);
  CHECK(a.steps == b.steps);
  const Trajectory c = simulate_walk(cfg, 6);
  CHECK(a.steps != c.steps);
}

TEST_CASE("normalized endpoint") {
  WalkConfig cfg{1, 1.0, {1.0, 0.0}, 10000, 1};
  const Trajectory traj = simulate_walk(cfg);
  // deterministic path, a = 2p-1 = 1
  CHECK(normalized_endpoint(traj, 1.0)(0) == 1.0);
  // direct arithmetic at another exponent
  CHECK(normalized_endpoint(traj, 0.75)(0) ==
        doctest::Approx(std::pow(10000.0, 0.25)).epsilon(1e-15));
  CHECK_THROWS_AS(normalized_endpoint(traj, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(normalized_endpoint(traj, 0.0), std::invalid_argument);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((WalkConfig{0, 0.5, {1.0, 0.0}, 10, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((WalkConfig{1, 1.5, {1.0, 0.0}, 10, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((WalkConfig{1, 0.5, {0.7, 0.2}, 10, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((WalkConfig{1, 0.5, {1.0, 0.0}, 0, 0}).validate(), std::invalid_argument);
  CHECK_NOTHROW((WalkConfig{1, 0.5, {1.0, 0.0}, 10, 0}).validate());
}

TEST_CASE("exponent formula") {
  WalkConfig cfg{3, 0.8, {}, 1, 0};
  CHECK(cfg.exponent() == doctest::Approx((4.8 - 1.0) / 5.0));
  WalkConfig one{1, 0.875, {}, 1, 0};
  CHECK(one.exponent() == doctest::Approx(0.75));
  CHECK(one.superdiffusive());
  WalkConfig diff{1, 0.6, {}, 1, 0};
  CHECK_FALSE(diff.superdiffusive());
}

TEST_CASE("monte carlo pmf matches the exact oracle at n = 12") {
  const std::int64_t n = 12;
  WalkConfig cfg{1, 0.87, {0.9, 0.1}, n, 99};
  const auto law = exact_law_1d(n, Rational(87, 100), Rational(9, 10), Rational(1, 10));

  const std::int64_t replicas = 100000;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint8_t> scratch;
  for (std::int64_t r = 0; r < replicas; ++r) {
    const int s = simulate_endpoint(cfg, static_cast<std::uint64_t>(r), scratch)(0);
    ++counts[static_cast<std::size_t>((s + n) / 2)];
  }
  std::vector<double> probs;
  probs.reserve(counts.size());
  for (std::int64_t r = 0; r <= n; ++r)
    probs.push_back(static_cast<double>(law.pmf[static_cast<std::size_t>(r)]));
  const Chi2Result res = chi2_gof(counts, probs);
  CHECK(res.pvalue > 0.001);
}

TEST_CASE("ensemble moments of a constant ensemble") {
  LimitEnsemble ens;
  ens.d = 2;
  ens.a = 0.75;
  ens.n = 10;
  ens.values.resize(5, 2);
  for (int r = 0; r < 5; ++r) {
    ens.values(r, 0) = 2.0;
    ens.values(r, 1) = -1.0;
  }
  const EnsembleMoments m = estimate_limit_moments(ens);
  CHECK(m.mean(0) == 2.0);
  CHECK(m.mean(1) == -1.0);
  CHECK(m.mean_se(0) == 0.0);
  CHECK(m.second(0, 0) == 4.0);
  CHECK(m.second(0, 1) == -2.0);
  CHECK(m.second_se(1, 1) == 0.0);
}

TEST_CASE("predicted moment formulas are internally consistent") {
  const double a = 0.75;
  // dimension 1 reduces to the known scalar values
  const VecD mean1 = predicted_limit_mean(1, a, {1.0, 0.0});
  CHECK(mean1(0) == doctest::Approx(1.0 / std::tgamma(1.75)));
  const MatD sec1 = predicted_limit_second_moment(1, a, {1.0, 0.0});
  CHECK(sec1(0, 0) == doctest::Approx(1.0 / ((2 * a - 1) * std::tgamma(2 * a))));
  // uniform q collapses to I / (d (2a-1) Gamma(2a))
  const MatD sec2 = predicted_limit_second_moment(2, a, {0.25, 0.25, 0.25, 0.25});
  const double expect = 1.0 / (2.0 * (2 * a - 1) * std::tgamma(2 * a));
  CHECK(sec2(0, 0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(sec2(1, 1) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(sec2(0, 1) == 0.0);
}

TEST_CASE("fluctuation sampler contracts") {
  WalkConfig cfg{1, 0.875, {1.0, 0.0}, 100, 5};
  CHECK_THROWS_AS(fluctuation_sample(cfg, 100, 100, 10), std::invalid_argument);
  CHECK_THROWS_AS(fluctuation_sample(cfg, 120, 100, 10), std::invalid_argument);

  // p=1: deterministic, all values identical with zero variance
  WalkConfig det{1, 1.0, {1.0, 0.0}, 100, 5};
  const FluctuationSample f = fluctuation_sample(det, 50, 100, 16);
  for (double v : f.values) CHECK(v == f.values.front());

  // n = N-1: proxy nearly equals the value
  const FluctuationSample tight = fluctuation_sample(cfg, 99, 100, 64);
  for (double v : tight.values) CHECK(std::fabs(v) < 0.5);
  // 2a-1 = 1/2 at p = 0.875
  CHECK(tight.bias_factor == doctest::Approx(1.0 - std::pow(0.99, 0.5)).epsilon(1e-12));
}
