#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elephant/moments.hpp"

using namespace elephant;

namespace {

// closed forms for m_2..m_4
Rational m2_closed(const Rational& a) { return a / (2 * a - 1); }
Rational m3_closed(const Rational& a) { return (a + 1) / (2 * (2 * a - 1)); }
Rational m4_closed(const Rational& a) {
  return a * (2 * a * a + 2 * a - 1) / ((4 * a - 1) * (2 * a - 1) * (2 * a - 1));
}

const std::vector<Rational> kGrid = {Rational(11, 20), Rational(3, 5),  Rational(7, 10),
                                     Rational(3, 4),   Rational(4, 5),  Rational(9, 10)};

}  // namespace

TEST_CASE("recursion reproduces the closed forms exactly on the grid") {
  for (const auto& a : kGrid) {
    const auto m = m_sequence_exact(a, 4);
    CHECK(m[1] == 1);
    CHECK(m[2] == m2_closed(a));
    CHECK(m[3] == m3_closed(a));
    CHECK(m[4] == m4_closed(a));
  }
}

TEST_CASE("values at a = 3/4") {
  const auto m = m_sequence_exact(Rational(3, 4), 4);
  CHECK(m[2] == Rational(3, 2));
  CHECK(m[3] == Rational(7, 4));
  CHECK(m[4] == Rational(39, 16));
}

TEST_CASE("monotonicity and positivity across the grid") {
  std::vector<std::vector<Rational>> tables;
  for (const auto& a : kGrid) tables.push_back(m_sequence_exact(a, 12));
  for (int k = 2; k <= 12; ++k) {
    for (std::size_t i = 0; i + 1 < kGrid.size(); ++i) {
      CHECK(tables[i][static_cast<std::size_t>(k)] >
            tables[i + 1][static_cast<std::size_t>(k)]);  // decreasing in a
    }
    for (std::size_t i = 0; i < kGrid.size(); ++i)
      CHECK(tables[i][static_cast<std::size_t>(k)] > 0);
    // trend toward 1 as a -> 1: the largest grid point is closest to 1
    CHECK(tables.back()[static_cast<std::size_t>(k)] - 1 <
          tables.front()[static_cast<std::size_t>(k)] - 1);
  }
}

TEST_CASE("mu_k against the published first moments") {
  const MomentTable t = make_moment_table(Rational(3, 4), 4, 256);
  const double a = 0.75;
  CHECK(static_cast<double>(moment_L1(t, 1)) ==
        doctest::Approx(1.0 / std::tgamma(1.0 + a)).epsilon(1e-14));
  CHECK(static_cast<double>(moment_L1(t, 2)) ==
        doctest::Approx(1.0 / ((2 * a - 1) * std::tgamma(2 * a))).epsilon(1e-14));
  CHECK(static_cast<double>(moment_L1(t, 3)) ==
        doctest::Approx((a + 1) / (a * (2 * a - 1) * std::tgamma(3 * a))).epsilon(1e-14));
  CHECK(static_cast<double>(moment_L1(t, 4)) ==
        doctest::Approx(6 * (2 * a * a + 2 * a - 1) /
                        ((4 * a - 1) * (2 * a - 1) * (2 * a - 1) * std::tgamma(4 * a)))
            .epsilon(1e-14));
  for (int k = 1; k <= 4; ++k) CHECK(moment_L1(t, k) > 0);
}

TEST_CASE("moments of L_q") {
  const MomentTable t = make_moment_table(Rational(3, 4), 6, 128);
  // q=1 leaves everything unchanged
  for (int k = 1; k <= 6; ++k) CHECK(moment_Lq(t, 1.0, k) == moment_L1(t, k));
  // q=1/2 kills odd moments
  CHECK(moment_Lq(t, 0.5, 3) == 0);
  CHECK(moment_Lq(t, 0.5, 5) == 0);
  // even moments do not depend on q
  CHECK(moment_Lq(t, 0.9, 2) == moment_L1(t, 2));
  CHECK(moment_Lq(t, 0.1, 4) == moment_L1(t, 4));
}

TEST_CASE("mgf basics") {
  const MomentTable t = make_moment_table(Rational(3, 4), 40, 256);
  const MgfValue at_zero = mgf_L1(t, Real(0), 40);
  CHECK(static_cast<double>(at_zero.value) == 1.0);

  // small t: two terms match 1 + t/Gamma(1+a) to O(t^2)
  const double tiny = 1e-8;
  const MgfValue small = mgf_L1(t, Real(tiny), 2);
  const double expected = 1.0 + tiny / std::tgamma(1.75);
  CHECK(static_cast<double>(small.value) == doctest::Approx(expected).epsilon(1e-12));

  // truncation tail bound is valid and shrinks with the order
  const MgfValue a40 = mgf_L1(t, Real(1), 40);
  const MgfValue a30 = mgf_L1(t, Real(1), 30);
  CHECK(a40.tail_bound_valid);
  CHECK(a30.tail_bound_valid);
  CHECK(a40.tail_bound < a30.tail_bound);
  CHECK(static_cast<double>(abs(a40.value - a30.value)) <=
        static_cast<double>(a30.tail_bound));
}

TEST_CASE("ratio test of the squared-variable series") {
  // term(k) = |t|^k mu_{2k} / k!; successive ratios tend to zero
  const MomentTable t = make_moment_table(Rational(3, 4), 80, 512);
  PrecisionGuard guard(512);
  Real prev_ratio = std::numeric_limits<double>::infinity();
  for (int k = 10; k + 1 <= 40; k += 10) {
    const Real term_k = t.mu[static_cast<std::size_t>(2 * k)];
    const Real term_k1 = t.mu[static_cast<std::size_t>(2 * (k + 1))];
    const Real ratio = term_k1 / (term_k * (k + 1));  // |t| = 1
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio < 1);
}

TEST_CASE("factorial-moment envelope certificates") {
  const double a = 0.75;
  const double mu2 = 1.0 / ((2 * a - 1) * std::tgamma(2 * a));
  // k=1 is Cauchy-Schwarz, k=2 an algebraic identity; both must hold with
  // the exact moments as input
  const MomentTable t = make_moment_table(Rational(3, 4), 6, 128);
  std::vector<double> abs_moments;
  abs_moments.push_back(static_cast<double>(moment_L1(t, 1)));  // |W| >= W for k=1 lower bound
  abs_moments.push_back(mu2);
  const auto certs = bound_check(a, abs_moments);
  REQUIRE(certs.size() == 2);
  CHECK(certs[0].holds);
  CHECK(certs[1].holds);
  CHECK(certs[0].k == 1);
  CHECK(certs[1].margin >= 0.0);
}

TEST_CASE("carleman diagnostic") {
  const MomentTable t = make_moment_table(Rational(3, 4), 200, 1024);
  const CarlemanDiagnostic diag = carleman_diagnostic(t, 100);
  REQUIRE(diag.partial_sums.size() == 100);
  for (std::size_t i = 1; i < diag.partial_sums.size(); ++i)
    CHECK(diag.partial_sums[i] > diag.partial_sums[i - 1]);  // strictly increasing
  CHECK(std::fabs(diag.fitted_exponent - (-0.25)) < 0.1);
}

TEST_CASE("hankel matrix of (m_k) loses positivity") {
  for (const auto& a : kGrid) {
    const auto m = m_sequence_exact(a, 24);
    const int first_bad = hankel_first_nonpositive(m, 12);
    CHECK(first_bad > 0);  // (m_k) is not a moment sequence
  }
}

TEST_CASE("rejects a outside the superdiffusive window") {
  CHECK_THROWS_AS(m_sequence_exact(Rational(1, 2), 4), std::invalid_argument);
  CHECK_THROWS_AS(m_sequence_exact(Rational(2, 5), 4), std::invalid_argument);
  CHECK_THROWS_AS(make_moment_table(0.4, 4, 128), std::invalid_argument);
}
