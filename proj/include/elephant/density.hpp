#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// Three-term recurrence of the orthogonal polynomials of the target
/// measure: p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}, beta_0 = mu_0.
template <class Scalar>
struct RecurrenceCoeffs {
  VecX<Scalar> alpha;
  VecX<Scalar> beta;
};

class NonPositiveBeta : public std::runtime_error {
 public:
  explicit NonPositiveBeta(int index)
      : std::runtime_error("nonpositive recurrence coefficient beta_" + std::to_string(index) +
                           "; raise the precision or check the moments"),
        index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// Recurrence coefficients from raw moments mu_0..mu_{2K-1} via the
/// classical moment-to-recurrence (long quotient) construction. Loses
/// roughly O(K log10(cond)) digits; run it at extended precision. An exactly
/// zero beta terminates the recurrence (finitely supported measure); a
/// negative beta throws NonPositiveBeta.
template <class Scalar>
RecurrenceCoeffs<Scalar> jacobi_from_moments(const VecX<Scalar>& moments) {
  const Eigen::Index m = moments.size();
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("jacobi_from_moments: need an even moment count 2K >= 2");
  const Eigen::Index k_max = m / 2;
  if (moments(0) <= 0) throw std::invalid_argument("jacobi_from_moments: mu_0 must be positive");

  RecurrenceCoeffs<Scalar> rc;
  rc.alpha.resize(k_max);
  rc.beta.resize(k_max);
  rc.alpha(0) = moments(1) / moments(0);
  rc.beta(0) = moments(0);

  VecX<Scalar> prev = VecX<Scalar>::Zero(m);  // sigma_{k-2}
  VecX<Scalar> cur = moments;                 // sigma_{k-1}
  Eigen::Index realized = 1;
  for (Eigen::Index k = 1; k < k_max; ++k) {
    VecX<Scalar> next = VecX<Scalar>::Zero(m);
    for (Eigen::Index l = k; l <= m - k - 1; ++l) {
      next(l) = cur(l + 1) - rc.alpha(k - 1) * cur(l) - rc.beta(k - 1) * prev(l);
    }
    const Scalar beta_k = next(k) / cur(k - 1);
    if (beta_k < 0) throw NonPositiveBeta(static_cast<int>(k));
    if (beta_k == 0) break;  // measure supported on k atoms
    rc.beta(k) = beta_k;
    rc.alpha(k) = next(k + 1) / next(k) - cur(k) / cur(k - 1);
    prev = cur;
    cur = next;
    realized = k + 1;
  }
  rc.alpha.conservativeResize(realized);
  rc.beta.conservativeResize(realized);
  return rc;
}

template <class Scalar>
struct QuadratureMeasure {
  VecX<Scalar> atoms;
  VecX<Scalar> weights;
};

/// Golub-Welsch: atoms are the eigenvalues of the symmetric tridiagonal
/// Jacobi matrix, weights are mu_0 times squared first eigenvector entries.
template <class Scalar>
QuadratureMeasure<Scalar> quadrature(const RecurrenceCoeffs<Scalar>& rc) {
  const Eigen::Index k = rc.alpha.size();
  if (k < 1 || rc.beta.size() != k)
    throw std::invalid_argument("quadrature: invalid recurrence coefficients");
  VecX<Scalar> sub(k > 1 ? k - 1 : 0);
  for (Eigen::Index j = 1; j < k; ++j) {
    if (rc.beta(j) <= 0) throw NonPositiveBeta(static_cast<int>(j));
    sub(j - 1) = sqrt(rc.beta(j));
  }
  using std::sqrt;
  Eigen::SelfAdjointEigenSolver<MatX<Scalar>> solver;
  if (k == 1) {
    QuadratureMeasure<Scalar> q;
    q.atoms = rc.alpha;
    q.weights = rc.beta.head(1);
    return q;
  }
  solver.computeFromTridiagonal(rc.alpha, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("quadrature: tridiagonal eigensolver did not converge");
  QuadratureMeasure<Scalar> q;
  q.atoms = solver.eigenvalues();
  q.weights.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Scalar v = solver.eigenvectors()(0, i);
    q.weights(i) = rc.beta(0) * v * v;
  }
  return q;
}

struct DensityCurve {
  VecD x;
  VecD f;
  double integral = 0.0;
  double min_value = 0.0;
  int negative_count = 0;
  bool clamped = false;
};

namespace detail {

/// Fritsch-Carlson slopes for a monotone cubic interpolant of (x, y).
inline std::vector<double> pchip_slopes(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> delta(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      const double w1 = 2.0 * h1 + h0;
      const double w2 = h1 + 2.0 * h0;
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  return d;
}

inline double hermite_derivative(double x0, double x1, double y0, double y1, double d0,
                                 double d1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double h00 = 6.0 * t * t - 6.0 * t;
  const double h10 = 3.0 * t * t - 4.0 * t + 1.0;
  const double h01 = -6.0 * t * t + 6.0 * t;
  const double h11 = 3.0 * t * t - 2.0 * t;
  return (y0 * h00 + y1 * h01) / h + d0 * h10 + d1 * h11;
}

}  // namespace detail

/// Atomic measure -> cumulative function -> monotone cubic interpolation ->
/// derivative on the grid. The monotone scheme keeps the derivative
/// nonnegative; any residual negativity is reported, and clamping is opt-in.
template <class Scalar>
DensityCurve smooth_density(const QuadratureMeasure<Scalar>& q, const VecD& grid,
                            bool clamp_negative = false) {
  const Eigen::Index k = q.atoms.size();
  if (k < 4) throw std::invalid_argument("smooth_density: need at least 4 atoms");
  std::vector<double> xs, fs;
  xs.reserve(static_cast<std::size_t>(k) + 2);
  fs.reserve(static_cast<std::size_t>(k) + 2);
  double cum = 0.0;
  const double left_pad = (static_cast<double>(q.atoms(1)) - static_cast<double>(q.atoms(0))) / 2.0;
  const double right_pad =
      (static_cast<double>(q.atoms(k - 1)) - static_cast<double>(q.atoms(k - 2))) / 2.0;
  xs.push_back(static_cast<double>(q.atoms(0)) - left_pad);
  fs.push_back(0.0);
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) total += static_cast<double>(q.weights(i));
  for (Eigen::Index i = 0; i < k; ++i) {
    const double w = static_cast<double>(q.weights(i));
    xs.push_back(static_cast<double>(q.atoms(i)));
    fs.push_back(cum + w / 2.0);  // midpoint convention at each atom
    cum += w;
  }
  xs.push_back(static_cast<double>(q.atoms(k - 1)) + right_pad);
  fs.push_back(total);

  const std::vector<double> slopes = detail::pchip_slopes(xs, fs);

  DensityCurve curve;
  curve.x = grid;
  curve.f.resize(grid.size());
  std::size_t seg = 0;
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    const double x = grid(g);
    if (x < xs.front() || x > xs.back()) {
      curve.f(g) = 0.0;
      continue;
    }
    while (seg + 2 < xs.size() && x > xs[seg + 1]) ++seg;
    while (seg > 0 && x < xs[seg]) --seg;
    curve.f(g) = detail::hermite_derivative(xs[seg], xs[seg + 1], fs[seg], fs[seg + 1],
                                            slopes[seg], slopes[seg + 1], x);
  }
  curve.min_value = curve.f.minCoeff();
  curve.negative_count = static_cast<int>((curve.f.array() < 0.0).count());
  if (clamp_negative && curve.negative_count > 0) {
    curve.f = curve.f.cwiseMax(0.0);
    curve.clamped = true;
  }
  double integral = 0.0;
  for (Eigen::Index g = 0; g + 1 < grid.size(); ++g)
    integral += 0.5 * (curve.f(g) + curve.f(g + 1)) * (grid(g + 1) - grid(g));
  if (curve.clamped && integral > 0.0) {
    curve.f /= integral;
    integral = 1.0;
  }
  curve.integral = integral;
  return curve;
}

struct HistogramComparison {
  double l1 = 0.0;   // total variation style distance between bin masses
  double sup = 0.0;  // max density discrepancy over bins
  double ks = 0.0;   // max CDF discrepancy at bin edges
  int bins = 0;
};

/// Bins the samples on the curve's range (Freedman-Diaconis width unless a
/// bin count is forced) and compares bin masses against the curve mass.
HistogramComparison histogram_compare(std::vector<double> samples, const DensityCurve& curve,
                                      int bins = 0);

}  // namespace elephant
