#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "elephant/exact_law.hpp"

using namespace elephant;

TEST_CASE("trivial laws at small n") {
  // n=1, q=(1,0): all mass at +1
  const auto law1 = exact_law_1d(1, Rational(3, 4), Rational(1), Rational(0));
  CHECK(law1.prob_position(1) == 1);
  CHECK(law1.prob_position(-1) == 0);

  // n=2, q=(1,0): P(S2=2)=p, P(S2=0)=1-p (single forced recall)
  const Rational p(87, 100);
  const auto law2 = exact_law_1d(2, p, Rational(1), Rational(0));
  CHECK(law2.prob_position(2) == p);
  CHECK(law2.prob_position(0) == 1 - p);
  CHECK(law2.prob_position(-2) == 0);
}

TEST_CASE("probabilities sum to exactly one") {
  const auto law = exact_law_1d(20, Rational(87, 100), Rational(9, 10), Rational(1, 10));
  Rational total(0);
  for (const auto& mass : law.pmf) total += mass;
  CHECK(total == 1);
}

TEST_CASE("dp equals brute-force enumeration") {
  const Rational p(3, 4);
  SUBCASE("d=1, n=3, q=(1,0)") {
    const auto dp = exact_law_1d(3, p, Rational(1), Rational(0));
    const auto bf = testing::brute_force_position_law(3, 1, p, {Rational(1), Rational(0)});
    for (const auto& [pos, prob] : bf) CHECK(dp.prob_position(pos[0]) == prob);
  }
  SUBCASE("d=1, n=8, generic q") {
    const auto dp = exact_law_1d(8, Rational(87, 100), Rational(9, 10), Rational(1, 10));
    const auto bf = testing::brute_force_position_law(
        8, 1, Rational(87, 100), {Rational(9, 10), Rational(1, 10)});
    Rational checked(0);
    for (const auto& [pos, prob] : bf) {
      CHECK(dp.prob_position(pos[0]) == prob);
      checked += prob;
    }
    CHECK(checked == 1);
  }
  SUBCASE("d=2, n=5, uniform q") {
    const std::vector<Rational> q(4, Rational(1, 4));
    const auto dp = position_pushforward(exact_law_counts(5, 2, Rational(4, 5), q));
    const auto bf = testing::brute_force_position_law(5, 2, Rational(4, 5), q);
    CHECK(dp.size() == bf.size());
    for (const auto& [pos, prob] : bf) CHECK(dp.at(pos) == prob);
  }
}

TEST_CASE("counts dp with two colors reproduces the 1d dp") {
  const Rational p(4, 5);
  const std::vector<Rational> q = {Rational(9, 10), Rational(1, 10)};
  const auto counts = exact_law_counts(10, 1, p, q);
  const auto dp = exact_law_1d(10, p, q[0], q[1]);
  for (const auto& [pos, prob] : position_pushforward(counts))
    CHECK(dp.prob_position(pos[0]) == prob);
}

TEST_CASE("counts dp trivial cases") {
  // n=1: pmf equals q
  const std::vector<Rational> q = {Rational(1, 2), Rational(1, 6), Rational(1, 6), Rational(1, 6)};
  const auto law = exact_law_counts(1, 2, Rational(1, 2), q);
  for (const auto& [counts, prob] : law.pmf) {
    int which = -1;
    for (int c = 0; c < 4; ++c)
      if (counts[static_cast<std::size_t>(c)] == 1) which = c;
    CHECK(prob == q[static_cast<std::size_t>(which)]);
  }

  // d=2, p=1, q concentrated on +e1: all mass on N=(n,0,0,0)
  const std::vector<Rational> q1 = {Rational(1), Rational(0), Rational(0), Rational(0)};
  const auto frozen = exact_law_counts(7, 2, Rational(1), q1);
  REQUIRE(frozen.pmf.size() == 1);
  CHECK(frozen.pmf.begin()->first == std::vector<int>{7, 0, 0, 0});
  CHECK(frozen.pmf.begin()->second == 1);
}

TEST_CASE("exchangeability: relabeling colors permutes the law exactly") {
  const Rational p(87, 100);
  const auto law_a = exact_law_1d(9, p, Rational(9, 10), Rational(1, 10));
  const auto law_b = exact_law_1d(9, p, Rational(1, 10), Rational(9, 10));
  for (std::int64_t s = -9; s <= 9; ++s)
    CHECK(law_a.prob_position(s) == law_b.prob_position(-s));
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(exact_law_1d(26, Rational(1, 2), Rational(1), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_law_counts(13, 2, Rational(1, 2), std::vector<Rational>(4, Rational(1, 4))),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_law_1d(5, Rational(3, 2), Rational(1), Rational(0)),
                  std::invalid_argument);
}
