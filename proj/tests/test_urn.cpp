#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elephant/exact_law.hpp"
#include "elephant/stats.hpp"
#include "elephant/urn.hpp"

using namespace elephant;

namespace {
UrnConfig two_color(double p, std::int64_t n, std::uint64_t seed) {
  UrnConfig cfg;
  cfg.colors = 2;
  cfg.p = p;
  cfg.n = n;
  cfg.seed = seed;
  cfg.initial = Eigen::Vector2i(1, 0);
  return cfg;
}
}  // namespace

TEST_CASE("frozen urn and forced flip") {
  // p=1: only the initial color is ever added
  const UrnPath frozen = simulate_urn(two_color(1.0, 50, 3));
  CHECK(frozen.compositions(50, 0) == 51);
  CHECK(frozen.compositions(50, 1) == 0);

  // p=0 with two colors: the first added ball must be the other color
  for (std::uint64_t r = 0; r < 16; ++r) {
    const UrnPath path = simulate_urn(two_color(0.0, 1, 11), r);
    CHECK(path.compositions(1, 1) == 1);
  }
}

TEST_CASE("ball conservation along every path") {
  UrnConfig cfg;
  cfg.colors = 4;
  cfg.p = 0.8;
  cfg.n = 200;
  cfg.seed = 21;
  cfg.initial = Eigen::VectorXi::Zero(4);
  cfg.initial(2) = 1;
  const UrnPath path = simulate_urn(cfg);
  for (std::int64_t t = 0; t <= cfg.n; ++t) {
    CHECK(path.compositions.row(t).sum() == 1 + t);
    CHECK(path.compositions.row(t).minCoeff() >= 0);
  }
}

TEST_CASE("composition to walk position") {
  Eigen::VectorXi comp(4);
  comp << 5, 3, 2, 2;
  const Eigen::VectorXi pos = urn_to_walk_position(comp);
  CHECK(pos(0) == 2);
  CHECK(pos(1) == 0);
  Eigen::VectorXi pair(2);
  pair << 1, 0;
  CHECK(urn_to_walk_position(pair)(0) == 1);
  Eigen::VectorXi odd(3);
  odd << 1, 0, 0;
  CHECK_THROWS_AS(urn_to_walk_position(odd), std::invalid_argument);
}

TEST_CASE("urn difference matches the walk's exact law") {
  // the urn after n-1 draws encodes S_n; chi-square against the DP oracle
  const std::int64_t n = 14;
  WalkConfig walk{1, 0.87, {0.9, 0.1}, n, 77};
  const auto law = exact_law_1d(n, Rational(87, 100), Rational(9, 10), Rational(1, 10));

  const std::int64_t replicas = 100000;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t r = 0; r < replicas; ++r) {
    const int s = urn_walk_endpoint(walk, static_cast<std::uint64_t>(r))(0);
    ++counts[static_cast<std::size_t>((s + n) / 2)];
  }
  std::vector<double> probs;
  for (std::int64_t r = 0; r <= n; ++r)
    probs.push_back(static_cast<double>(law.pmf[static_cast<std::size_t>(r)]));
  CHECK(chi2_gof(counts, probs).pvalue > 0.001);
}

TEST_CASE("subtree split invariants and uniform limit") {
  // exact leaf count at every time
  const SubtreeSplit split = simulate_subtree_split(300, 5);
  for (Eigen::Index t = 0; t < split.path.rows(); ++t)
    CHECK(split.path(t, 0) + split.path(t, 1) == t + 2);

  CHECK(simulate_subtree_split(1, 9).path.row(0).sum() == 2);

  // D1(n)/(n+1) is asymptotically Uniform[0,1]
  const std::int64_t n = 2000;
  const std::int64_t replicas = 4000;
  std::vector<double> fractions;
  fractions.reserve(static_cast<std::size_t>(replicas));
  for (std::int64_t r = 0; r < replicas; ++r) {
    const SubtreeSplit s = simulate_subtree_split(n, 17, static_cast<std::uint64_t>(r));
    fractions.push_back(static_cast<double>(s.path(n - 1, 0)) / static_cast<double>(n + 1));
  }
  const KsResult ks = ks_test(fractions, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(ks.pvalue > 0.001);
}

TEST_CASE("mean drift toward (e_k - v1)/Gamma(1+a)") {
  // moderate scale here; the acceptance suite runs the full version
  const int d = 1;
  const double a = 0.75;
  const double p = ((2.0 * d - 1.0) * a + 1.0) / (2.0 * d);
  UrnConfig cfg;
  cfg.colors = 2 * d;
  cfg.p = p;
  cfg.n = 20000;
  cfg.seed = 31;
  cfg.initial = Eigen::VectorXi::Zero(2 * d);
  cfg.initial(0) = 1;

  const std::int64_t replicas = 4000;
  MomentAccumulator acc0, acc1;
  for (std::int64_t r = 0; r < replicas; ++r) {
    const VecD dev = urn_normalized_deviation(cfg, a, static_cast<std::uint64_t>(r));
    acc0.add(dev(0));
    acc1.add(dev(1));
  }
  const double g = std::tgamma(1.0 + a);
  const double target0 = (1.0 - 0.5) / g;
  const double target1 = (0.0 - 0.5) / g;
  CHECK(std::fabs(acc0.mean() - target0) < 4.0 * acc0.se_mean() + 0.01);
  CHECK(std::fabs(acc1.mean() - target1) < 4.0 * acc1.se_mean() + 0.01);
}

TEST_CASE("config validation") {
  UrnConfig cfg;
  cfg.colors = 2;
  cfg.p = 0.5;
  cfg.n = 5;
  cfg.initial = Eigen::Vector2i(0, 0);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // empty urn
  cfg.initial = Eigen::Vector2i(1, 0);
  cfg.colors = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // odd color count
}
