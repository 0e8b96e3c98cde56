#include "elephant/spectral.hpp"

#include <Eigen/SVD>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace elephant {

namespace {

Eigen::MatrixXi int_identity(int n) { return Eigen::MatrixXi::Identity(n, n); }

/// Exact rank of a rational matrix by Gaussian elimination.
int rank_exact(std::vector<std::vector<Rational>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int row = rank; row < rows; ++row)
      if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(rank)]);
    const Rational pv = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
    for (int row = rank + 1; row < rows; ++row) {
      const Rational f = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / pv;
      if (f == 0) continue;
      for (int j = col; j < cols; ++j)
        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

/// Integer polynomial utilities for cyclotomic factors (coefficients are
/// exact rationals; all divisions used here are exact).
using Poly = std::vector<Rational>;  // ascending powers

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

/// Remainder of a by monic b.
Poly poly_rem(Poly a, const Poly& b) {
  a = poly_trim(std::move(a));
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

/// Exact quotient a / b for monic b dividing a.
Poly poly_quot(Poly a, const Poly& b) {
  a = poly_trim(std::move(a));
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size()) {
    const Rational lead = a.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = lead;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    a = poly_trim(std::move(a));
  }
  return q;
}

/// m-th cyclotomic polynomial, cached: Phi_m = (x^m - 1) / prod_{k|m, k<m} Phi_k.
const Poly& cyclotomic(int m) {
  static std::map<int, Poly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Poly num(static_cast<std::size_t>(m) + 1, Rational(0));
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int k = 1; k < m; ++k)
    if (m % k == 0) num = poly_quot(std::move(num), cyclotomic(k));
  return cache.emplace(m, std::move(num)).first->second;
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

}  // namespace

Eigen::MatrixXi build_K(int d) {
  if (d < 1) throw std::invalid_argument("build_K: d must be >= 1");
  const int n = 2 * d - 1;
  Eigen::MatrixXi k = Eigen::MatrixXi::Zero(n, n);
  for (int j = 0; j < n; ++j) k(0, j) = -1;
  for (int i = 1; i < n; ++i) k(i, i - 1) = 1;

  // K^{2d} = I, exactly
  Eigen::MatrixXi acc = int_identity(n);
  for (int s = 0; s < 2 * d; ++s) acc = k * acc;
  if (acc != int_identity(n)) throw std::logic_error("build_K: K^(2d) != I");

  // 1 is not an eigenvalue: K - I has full rank over the rationals
  std::vector<std::vector<Rational>> ki(static_cast<std::size_t>(n),
                                        std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ki[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rational(k(i, j) - (i == j ? 1 : 0));
  if (rank_exact(ki) != n) throw std::logic_error("build_K: 1 is an eigenvalue of K");
  return k;
}

MatD mean_replacement_matrix(int d, double p) {
  const int n = 2 * d;
  const double off = (1.0 - p) / (n - 1);
  MatD m = MatD::Constant(n, n, off);
  for (int i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

ReplacementSpectrum mean_replacement_spectrum(int d, double p) {
  if (d < 1) throw std::invalid_argument("mean_replacement_spectrum: d must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mean_replacement_spectrum: p must lie in [0,1]");
  const int n = 2 * d;
  const MatD ea = mean_replacement_matrix(d, p);
  ReplacementSpectrum out;
  out.secondary = (2.0 * d * p - 1.0) / (2.0 * d - 1.0);
  out.principal_vector = VecD::Constant(n, 1.0 / n);
  out.secondary_vectors.resize(n, n - 1);
  for (int i = 1; i < n; ++i) {
    VecD v = VecD::Zero(n);
    v(0) = 0.5;
    v(i) = -0.5;
    out.secondary_vectors.col(i - 1) = v;
  }
  out.residual = (ea * out.principal_vector - out.principal_vector).cwiseAbs().maxCoeff();
  for (int i = 0; i < n - 1; ++i) {
    const VecD v = out.secondary_vectors.col(i);
    out.residual = std::max(out.residual, (ea * v - out.secondary * v).cwiseAbs().maxCoeff());
  }
  return out;
}

namespace {

UCoordinates u_from_doubles(const std::vector<Real>& w, int d, unsigned bits) {
  const int n = 2 * d - 1;
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("u_coordinates: w must have length 2d-1");
  PrecisionGuard guard(bits);
  UCoordinates u;
  u.bits = bits;
  u.re.resize(n);
  u.im.resize(n);
  const Real pi = boost::math::constants::pi<Real>();
  Real wsum(0);
  for (const Real& x : w) wsum += x;
  for (int j = 1; j <= n; ++j) {
    Real re(0), im(0);
    for (int k = 1; k <= n; ++k) {
      const Real angle = pi * Real(static_cast<long long>(k) * j) / d;
      re += w[static_cast<std::size_t>(k - 1)] * cos(angle);
      im += w[static_cast<std::size_t>(k - 1)] * sin(angle);
    }
    u.re(j - 1) = (re - wsum) / (2 * d);
    u.im(j - 1) = im / (2 * d);
  }
  return u;
}

}  // namespace

UCoordinates u_coordinates(const VecD& w, int d, unsigned bits) {
  std::vector<Real> wr(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) wr[static_cast<std::size_t>(i)] = w(i);
  return u_from_doubles(wr, d, bits);
}

UCoordinates u_coordinates(const std::vector<Rational>& w, int d, unsigned bits) {
  std::vector<Real> wr(w.size());
  {
    PrecisionGuard guard(bits);
    for (std::size_t i = 0; i < w.size(); ++i) wr[i] = to_real(w[i]);
  }
  return u_from_doubles(wr, d, bits);
}

std::vector<int> u_zero_set_exact(const std::vector<Rational>& w, int d) {
  const int n = 2 * d - 1;
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("u_zero_set_exact: w must have length 2d-1");
  // f(x) = sum_k w_k (x^k - 1); u_j = f(eta^j)/(2d) with eta = exp(i pi / d)
  Poly f(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = 1; k <= n; ++k) {
    f[static_cast<std::size_t>(k)] += w[static_cast<std::size_t>(k - 1)];
    f[0] -= w[static_cast<std::size_t>(k - 1)];
  }
  f = poly_trim(std::move(f));
  std::vector<int> zero;
  for (int j = 1; j <= n; ++j) {
    if (f.empty()) {
      zero.push_back(j);  // w sums against every root: only when w = 0
      continue;
    }
    const int order = 2 * d / gcd_int(j, 2 * d);  // eta^j is a primitive root of this order
    if (poly_rem(f, cyclotomic(order)).empty()) zero.push_back(j);
  }
  return zero;
}

namespace {

std::vector<std::vector<Rational>> krylov_block(const std::vector<Rational>& w, int d) {
  const int n = 2 * d - 1;
  const Eigen::MatrixXi k = build_K(d);
  std::vector<std::vector<Rational>> cols;
  std::vector<Rational> cur = w;
  for (int c = 0; c < n; ++c) {
    cols.push_back(cur);
    std::vector<Rational> next(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (k(i, j) != 0) next[static_cast<std::size_t>(i)] += k(i, j) * cur[static_cast<std::size_t>(j)];
    cur = std::move(next);
  }
  // transpose into row-major matrix rows = n, cols = n
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
        cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
  return m;
}

}  // namespace

KrylovReport krylov_dimension(const std::vector<Rational>& w, int d) {
  const int n = 2 * d - 1;
  KrylovReport report;
  report.d = d;
  report.exact = true;
  report.zero_set = u_zero_set_exact(w, d);
  report.dimension = n - static_cast<int>(report.zero_set.size());
  report.rank = rank_exact(krylov_block(w, d));
  if (report.rank != report.dimension)
    throw std::logic_error("krylov_dimension: u zero count disagrees with the exact rank");
  return report;
}

KrylovReport krylov_dimension(const VecD& w, int d, unsigned bits) {
  const int n = 2 * d - 1;
  if (w.size() != n) throw std::invalid_argument("krylov_dimension: w must have length 2d-1");
  const MatD kd = build_K(d).cast<double>();
  MatD block(n, n);
  VecD cur = w;
  for (int c = 0; c < n; ++c) {
    block.col(c) = cur;
    cur = kd * cur;
  }
  Eigen::JacobiSVD<MatD> svd(block);
  const VecD sv = svd.singularValues();
  const double cutoff = sv(0) * 1e-8;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  KrylovReport report;
  report.d = d;
  report.exact = false;
  report.rank = rank;
  report.sv_gap = (rank < n && sv(rank) > 0.0) ? sv(rank - 1) / sv(rank)
                                               : std::numeric_limits<double>::infinity();
  if (rank < n && report.sv_gap < 1e3) throw AmbiguousRank(report.sv_gap);

  const UCoordinates u = u_coordinates(w, d, bits);
  PrecisionGuard guard(bits);
  Real maxmag(0);
  std::vector<Real> mags(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    mags[static_cast<std::size_t>(j)] = sqrt(u.re(j) * u.re(j) + u.im(j) * u.im(j));
    maxmag = std::max(maxmag, mags[static_cast<std::size_t>(j)]);
  }
  const Real tol = maxmag * Real(1e-20);
  for (int j = 0; j < n; ++j)
    if (mags[static_cast<std::size_t>(j)] <= tol) report.zero_set.push_back(j + 1);
  report.dimension = n - static_cast<int>(report.zero_set.size());
  if (report.rank != report.dimension)
    throw AmbiguousRank(report.sv_gap);  // float disagreement: defer to the exact path
  return report;
}

namespace {

VecD make_vec(std::initializer_list<double> entries) {
  VecD v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

}  // namespace

SupportClass classify_support(const std::vector<Rational>& w, int d) {
  if (d != 2 && d != 3) throw UnclassifiedDimension(d);
  bool nonzero = false;
  for (const auto& x : w) nonzero = nonzero || x != 0;
  if (!nonzero) throw std::invalid_argument("classify_support: w must be nonzero");

  SupportClass out;
  out.d = d;
  out.zero_set = u_zero_set_exact(w, d);
  out.dimension = 2 * d - 1 - static_cast<int>(out.zero_set.size());
  const std::vector<int>& z = out.zero_set;

  if (d == 2) {
    if (z.empty()) {
      out.label = "R^3";
      out.spanning = {make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1})};
    } else if (z == std::vector<int>{2}) {
      out.label = "Span{(1,0,-1),(0,1,0)}";
      out.spanning = {make_vec({1, 0, -1}), make_vec({0, 1, 0})};
    } else if (z == std::vector<int>{1, 3}) {
      out.label = "Span{(1,-1,1)}";
      out.spanning = {make_vec({1, -1, 1})};
    } else {
      throw std::logic_error("classify_support: unreachable zero set in d=2");
    }
    return out;
  }

  // d = 3: conjugate pairs (1,5) and (2,4), plus the real condition u_3
  if (z.empty()) {
    out.label = "R^5";
    out.spanning = {make_vec({1, 0, 0, 0, 0}), make_vec({0, 1, 0, 0, 0}),
                    make_vec({0, 0, 1, 0, 0}), make_vec({0, 0, 0, 1, 0}),
                    make_vec({0, 0, 0, 0, 1})};
  } else if (z == std::vector<int>{3}) {
    out.label = "Span{f2,-f1+f3,-f2+f4,-f3+f5}";
    out.spanning = {make_vec({0, 1, 0, 0, 0}), make_vec({-1, 0, 1, 0, 0}),
                    make_vec({0, -1, 0, 1, 0}), make_vec({0, 0, -1, 0, 1})};
  } else if (z == std::vector<int>{1, 5}) {
    out.label = "Span{f3-2f4+2f5,-f1+f4-2f5,2f1-f2+f5}";
    out.spanning = {make_vec({0, 0, 1, -2, 2}), make_vec({-1, 0, 0, 1, -2}),
                    make_vec({2, -1, 0, 0, 1})};
  } else if (z == std::vector<int>{2, 4}) {
    out.label = "Span{f3,-f1+f4,-f2+f5}";
    out.spanning = {make_vec({0, 0, 1, 0, 0}), make_vec({-1, 0, 0, 1, 0}),
                    make_vec({0, -1, 0, 0, 1})};
  } else if (z == std::vector<int>{1, 3, 5}) {
    out.label = "Span{f2-f3+f5,-f1+f3-f4}";
    out.spanning = {make_vec({0, 1, -1, 0, 1}), make_vec({-1, 0, 1, -1, 0})};
  } else if (z == std::vector<int>{2, 3, 4}) {
    out.label = "Span{f2+f3-f5,-f1+f3+f4}";
    out.spanning = {make_vec({0, 1, 1, 0, -1}), make_vec({-1, 0, 1, 1, 0})};
  } else if (z == std::vector<int>{1, 2, 4, 5}) {
    out.label = "Span{f1-f2+f3-f4+f5}";
    out.spanning = {make_vec({1, -1, 1, -1, 1})};
  } else {
    throw std::logic_error("classify_support: unreachable zero set in d=3");
  }
  return out;
}

std::int64_t det3_closed_form(std::int64_t x, std::int64_t y, std::int64_t z) {
  return (x + z) * ((x + y) * (x + y) + (y + z) * (y + z));
}

std::int64_t det3_direct(std::int64_t x, std::int64_t y, std::int64_t z) {
  // columns w, Kw, K^2 w with K = [[-1,-1,-1],[1,0,0],[0,1,0]]
  const std::int64_t c0[3] = {x, y, z};
  const std::int64_t c1[3] = {-x - y - z, x, y};
  const std::int64_t c2[3] = {z, -x - y - z, x};
  return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
         c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

SupportEvidence support_evidence(const MatD& samples, int d, unsigned bits, double tolerance) {
  const int n = 2 * d - 1;
  if (samples.cols() != n)
    throw std::invalid_argument("support_evidence: samples must have 2d-1 columns");
  if (samples.rows() < 1) throw std::invalid_argument("support_evidence: empty sample");

  SupportEvidence out;
  out.samples = samples.rows();
  out.mean = samples.colwise().mean();
  out.mean_se.resize(n);
  for (int j = 0; j < n; ++j) {
    const double var = (samples.col(j).array() - out.mean(j)).square().sum() /
                       static_cast<double>(samples.rows());
    out.mean_se(j) = std::sqrt(var / static_cast<double>(samples.rows()));
  }
  out.max_mean_z = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double se = std::sqrt(out.mean_se(i) * out.mean_se(i) + out.mean_se(j) * out.mean_se(j));
      if (se > 0.0)
        out.max_mean_z = std::max(out.max_mean_z, std::fabs(out.mean(i) - out.mean(j)) / se);
    }

  PrecisionGuard guard(bits);
  std::vector<double> min_mags;
  min_mags.reserve(static_cast<std::size_t>(samples.rows()));
  std::int64_t full = 0;
  const Real tol(tolerance);
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    const VecD w = samples.row(r).transpose();
    const double scale = w.norm();
    if (scale == 0.0) {
      min_mags.push_back(0.0);
      continue;
    }
    const UCoordinates u = u_coordinates(w, d, bits);
    Real min_mag = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      min_mag = std::min(min_mag, sqrt(u.re(j) * u.re(j) + u.im(j) * u.im(j)) / Real(scale));
    min_mags.push_back(static_cast<double>(min_mag));
    if (min_mag > tol) ++full;
  }
  out.full_dimension_fraction = static_cast<double>(full) / static_cast<double>(samples.rows());
  std::sort(min_mags.begin(), min_mags.end());
  out.min_abs_u = min_mags.front();
  out.median_min_abs_u = min_mags[min_mags.size() / 2];
  return out;
}

void build_P(int d, unsigned bits, MatX<Real>& re, MatX<Real>& im) {
  PrecisionGuard guard(bits);
  const int n = 2 * d - 1;
  re.resize(n, n);
  im.resize(n, n);
  const Real pi = boost::math::constants::pi<Real>();
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      const Real angle = -pi * Real(static_cast<long long>(j) * k) / d;
      re(j - 1, k - 1) = cos(angle);
      im(j - 1, k - 1) = sin(angle);
    }
}

void build_P_inverse(int d, unsigned bits, MatX<Real>& re, MatX<Real>& im) {
  PrecisionGuard guard(bits);
  const int n = 2 * d - 1;
  re.resize(n, n);
  im.resize(n, n);
  const Real pi = boost::math::constants::pi<Real>();
  const Real scale = Real(1) / (2 * d);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      // row k of P^{-1} is (conj(z_k) - 1)^T / 2d
      const Real angle = pi * Real(static_cast<long long>(j) * k) / d;
      re(k - 1, j - 1) = (cos(angle) - 1) * scale;
      im(k - 1, j - 1) = sin(angle) * scale;
    }
}

}  // namespace elephant
