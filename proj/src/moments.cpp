#include "elephant/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "elephant/stats.hpp"

namespace elephant {

namespace {

template <class S>
std::vector<S> m_recursion(const S& a, int order) {
  std::vector<S> m(static_cast<std::size_t>(order) + 1);
  m[0] = 1;
  if (order >= 1) m[1] = 1;
  for (int k = 2; k <= order; ++k) {
    S sum(0);
    for (int j = 1; j < k; ++j) {
      const S cj = (j % 2 == 0) ? S(1) : a;
      sum += cj * m[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k - j)];
    }
    const S ck = (k % 2 == 0) ? S(1) : a;
    m[static_cast<std::size_t>(k)] = sum / (S(k) * a - ck);
  }
  return m;
}

Real real_factorial(int k) {
  Real f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void fill_mu(MomentTable& table) {
  table.mu.resize(table.m.size());
  table.mu[0] = 1;
  for (int k = 1; k <= table.order; ++k) {
    // (k-1)!/(a Gamma(ka)) = k!/Gamma(ka+1)
    const Real g = tgamma(Real(k) * table.a + 1);
    table.mu[static_cast<std::size_t>(k)] =
        real_factorial(k) / g * table.m[static_cast<std::size_t>(k)];
  }
}

void check_a_real(const Real& a) {
  if (!(a > Real(1) / 2))
    throw std::invalid_argument("moment recursion requires a > 1/2");
  if (a > 1) throw std::invalid_argument("moment recursion requires a <= 1");
}

}  // namespace

std::vector<Rational> m_sequence_exact(const Rational& a, int order) {
  if (order < 1) throw std::invalid_argument("m_sequence: order must be >= 1");
  if (!(a > Rational(1, 2)))
    throw std::invalid_argument("moment recursion requires a > 1/2");
  if (a > 1) throw std::invalid_argument("moment recursion requires a <= 1");
  return m_recursion<Rational>(a, order);
}

std::vector<Real> m_sequence_real(const Real& a, int order) {
  if (order < 1) throw std::invalid_argument("m_sequence: order must be >= 1");
  check_a_real(a);
  return m_recursion<Real>(a, order);
}

MomentTable make_moment_table(const Rational& a, int order, unsigned bits) {
  PrecisionGuard guard(bits);
  MomentTable table;
  table.exact = true;
  table.a_exact = a;
  table.a = to_real(a);
  table.bits = bits;
  table.order = order;
  table.m_rational = m_sequence_exact(a, order);
  table.m.resize(table.m_rational.size());
  for (std::size_t i = 0; i < table.m_rational.size(); ++i)
    table.m[i] = to_real(table.m_rational[i]);
  fill_mu(table);
  return table;
}

MomentTable make_moment_table(double a, int order, unsigned bits) {
  PrecisionGuard guard(bits);
  MomentTable table;
  table.exact = false;
  table.a = a;
  table.bits = bits;
  table.order = order;
  check_a_real(table.a);
  table.m = m_sequence_real(table.a, order);
  fill_mu(table);
  return table;
}

Real moment_L1(const MomentTable& table, int k) {
  if (k < 0 || k > table.order)
    throw std::invalid_argument("moment_L1: order exceeds the table");
  return table.mu[static_cast<std::size_t>(k)];
}

Real moment_Lq(const MomentTable& table, double q, int k) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("moment_Lq: q must lie in [0,1]");
  const double parity = (k % 2 == 0) ? 1.0 : (2.0 * q - 1.0);
  return Real(parity) * moment_L1(table, k);
}

MgfValue mgf_L1(const MomentTable& table, const Real& t, int terms) {
  if (terms < 0 || terms > table.order)
    throw std::invalid_argument("mgf_L1: terms exceeds the table");
  PrecisionGuard guard(table.bits);
  MgfValue out;
  out.value = 0;
  for (int k = 0; k <= terms; ++k) {
    const Real g = tgamma(Real(k) * table.a + 1);
    out.value += table.m[static_cast<std::size_t>(k)] * pow(t, k) / g;
  }
  // Envelope: |term_k| <= C^k (2/a)^(k-1) |t|^k / Gamma(ka+1) with
  // C = Gamma(a+1) sqrt(mu_2). The envelope ratio r_k = (2C|t|/a)
  // Gamma(ka+1)/Gamma((k+1)a+1) decreases in k; once r < 1 the tail is
  // geometric.
  if (table.order >= 2) {
    const Real c = tgamma(table.a + 1) * sqrt(table.mu[2]);
    const Real at = abs(t);
    const int k1 = terms + 1;
    const Real g_k1 = tgamma(Real(k1) * table.a + 1);
    const Real g_k2 = tgamma(Real(k1 + 1) * table.a + 1);
    const Real first = pow(c, k1) * pow(2 / table.a, k1 - 1) * pow(at, k1) / g_k1;
    const Real ratio = (2 * c * at / table.a) * g_k1 / g_k2;
    if (ratio < 1) {
      out.tail_bound = first / (1 - ratio);
      out.tail_bound_valid = true;
    } else {
      out.tail_bound = std::numeric_limits<double>::infinity();
      out.tail_bound_valid = false;
    }
  }
  return out;
}

std::vector<BoundCertificate> bound_check(double a, const std::vector<double>& abs_moments) {
  if (!(a > 0.5 && a < 1.0)) throw std::invalid_argument("bound_check: a must lie in (1/2,1)");
  const double mu2 = 1.0 / ((2.0 * a - 1.0) * std::tgamma(2.0 * a));
  const double c = std::tgamma(a + 1.0) * std::sqrt(mu2);
  std::vector<BoundCertificate> out;
  double factorial = 1.0;
  for (std::size_t i = 0; i < abs_moments.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    factorial *= k;
    BoundCertificate cert;
    cert.k = k;
    cert.lhs = abs_moments[i] / factorial;
    cert.rhs = std::pow(c, k) * std::pow(2.0 / a, k - 1) / std::tgamma(k * a + 1.0);
    cert.margin = cert.rhs - cert.lhs;
    cert.holds = cert.lhs <= cert.rhs;
    out.push_back(cert);
  }
  return out;
}

CarlemanDiagnostic carleman_diagnostic(const MomentTable& table, int terms) {
  if (terms < 2 || 2 * terms > table.order)
    throw std::invalid_argument("carleman_diagnostic: table must hold mu up to 2*terms");
  CarlemanDiagnostic out;
  out.partial_sums.reserve(static_cast<std::size_t>(terms));
  std::vector<double> logk, logterm;
  double sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    const Real mu2k = table.mu[static_cast<std::size_t>(2 * k)];
    const Real term = pow(mu2k, Real(-1) / (2 * k));
    sum += static_cast<double>(term);
    out.partial_sums.push_back(sum);
    if (2 * k >= terms) {  // fit on the upper half where the power law has set in
      logk.push_back(std::log(static_cast<double>(k)));
      logterm.push_back(static_cast<double>(log(term)));
    }
  }
  out.fitted_exponent = regression_slope(logk, logterm);
  return out;
}

int hankel_first_nonpositive(const std::vector<Rational>& m, int max_order) {
  for (int r = 1; r <= max_order; ++r) {
    if (2 * r >= static_cast<int>(m.size()))
      throw std::invalid_argument("hankel scan: need m up to index 2*max_order");
    // exact determinant of (m_{i+j})_{0<=i,j<=r} by fraction-free elimination
    const int n = r + 1;
    std::vector<std::vector<Rational>> h(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            m[static_cast<std::size_t>(i + j)];
    Rational det(1);
    bool singular = false;
    for (int col = 0; col < n && !singular; ++col) {
      int pivot = -1;
      for (int row = col; row < n; ++row)
        if (h[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
          pivot = row;
          break;
        }
      if (pivot < 0) {
        singular = true;
        break;
      }
      if (pivot != col) {
        std::swap(h[static_cast<std::size_t>(pivot)], h[static_cast<std::size_t>(col)]);
        det = -det;
      }
      const Rational pv = h[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      det *= pv;
      for (int row = col + 1; row < n; ++row) {
        const Rational factor = h[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / pv;
        if (factor == 0) continue;
        for (int j = col; j < n; ++j)
          h[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
              factor * h[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
    if (singular || det <= 0) return r;
  }
  return -1;
}

}  // namespace elephant
