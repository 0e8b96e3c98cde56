#pragma once

#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// m_1 = 1 and m_k = (sum_{j=1}^{k-1} c_j m_j m_{k-j}) / (ka - c_k), with
/// c_k = 1 for even k and c_k = a for odd k. Exact in the rational field.
std::vector<Rational> m_sequence_exact(const Rational& a, int order);

/// Same recursion carried in extended-precision reals (for decimal a or
/// large orders where exact rationals get unwieldy).
std::vector<Real> m_sequence_real(const Real& a, int order);

/// Moment table of the limit variable started to the right: m_k plus
/// mu_k = E[L_1^k] = (k-1)!/(a Gamma(ka)) m_k. Gamma enters only through
/// MPFR at the requested precision.
struct MomentTable {
  bool exact = false;
  Rational a_exact;
  Real a;
  unsigned bits = 0;
  int order = 0;
  std::vector<Rational> m_rational;  // empty unless exact
  std::vector<Real> m;               // index k, k = 0..order, m[0] = 1
  std::vector<Real> mu;              // mu[0] = 1
};

MomentTable make_moment_table(const Rational& a, int order, unsigned bits);
MomentTable make_moment_table(double a, int order, unsigned bits);

Real moment_L1(const MomentTable& table, int k);

/// E[L_q^k] = (q + (-1)^k (1-q)) E[L_1^k].
Real moment_Lq(const MomentTable& table, double q, int k);

struct MgfValue {
  Real value;
  Real tail_bound;
  bool tail_bound_valid = false;
};

/// Partial sum of sum_k m_k t^k / Gamma(ka+1) with a geometric tail bound
/// from the factorial-moment envelope; the bound is flagged invalid when the
/// envelope ratio has not yet dropped below 1 at the truncation order.
MgfValue mgf_L1(const MomentTable& table, const Real& t, int terms);

struct BoundCertificate {
  int k = 0;
  double lhs = 0.0;  // E|W|^k / k!
  double rhs = 0.0;  // C^k (2/a)^(k-1) / Gamma(ka+1)
  bool holds = false;
  double margin = 0.0;  // rhs - lhs
};

/// Checks the factorial-moment envelope against supplied estimates of
/// E|W|^k (or E||Y||^k in higher dimension); C = Gamma(a+1) sqrt(E[W^2])
/// uses the exact second moment.
std::vector<BoundCertificate> bound_check(double a, const std::vector<double>& abs_moments);

struct CarlemanDiagnostic {
  std::vector<double> partial_sums;  // partial sums of (mu_{2k})^{-1/(2k)}
  double fitted_exponent = 0.0;      // log-log slope, expected about -(1-a)
};

CarlemanDiagnostic carleman_diagnostic(const MomentTable& table, int terms);

/// First order r >= 1 at which det (m_{i+j})_{0<=i,j<=r} fails to be positive
/// (exact arithmetic); returns -1 if positivity holds through max_order.
/// Evidence that (m_k) is not itself a moment sequence.
int hankel_first_nonpositive(const std::vector<Rational>& m, int max_order);

}  // namespace elephant
