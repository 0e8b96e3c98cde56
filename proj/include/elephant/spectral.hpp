#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// Companion-type matrix of size (2d-1): first row all -1, ones on the
/// subdiagonal. Satisfies K^{2d} = I exactly and does not have 1 as an
/// eigenvalue; both are asserted in integer arithmetic on construction.
Eigen::MatrixXi build_K(int d);

/// E[A] = p I + (1-p)/(2d-1) (J + ... + J^{2d-1}) over 2d colors.
MatD mean_replacement_matrix(int d, double p);

struct ReplacementSpectrum {
  double principal = 1.0;
  double secondary = 0.0;  // (2dp-1)/(2d-1), multiplicity 2d-1
  VecD principal_vector;   // (1/2d) sum e_i
  MatD secondary_vectors;  // columns (e_1 - e_i)/2, i = 2..2d
  double residual = 0.0;   // max |E[A] v - lambda v| over all eigenpairs
};

ReplacementSpectrum mean_replacement_spectrum(int d, double p);

/// u = P^{-1} w where P has columns z_k = (eta^{-k}, ..., eta^{-(2d-1)k}),
/// eta = exp(i pi/d): u_k = (1/2d) sum_j w_j (eta^{jk} - 1).
struct UCoordinates {
  VecX<Real> re;
  VecX<Real> im;
  unsigned bits = 0;
};

UCoordinates u_coordinates(const VecD& w, int d, unsigned bits);
UCoordinates u_coordinates(const std::vector<Rational>& w, int d, unsigned bits);

/// Exact zero set of u for rational w: u_j = 0 iff the cyclotomic polynomial
/// of eta^j divides f(x) = sum_k w_k (x^k - 1). Indices are 1-based.
std::vector<int> u_zero_set_exact(const std::vector<Rational>& w, int d);

class AmbiguousRank : public std::runtime_error {
 public:
  explicit AmbiguousRank(double gap)
      : std::runtime_error("krylov rank ambiguous (singular value gap " +
                           std::to_string(gap) + " < 1e3); use the exact path"),
        gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

struct KrylovReport {
  int d = 0;
  std::vector<int> zero_set;  // 1-based u indices that vanish
  int dimension = 0;          // (2d-1) - |zero_set|
  int rank = 0;               // rank of [w, Kw, ..., K^{2d-2}w]
  bool exact = false;
  double sv_gap = 0.0;  // float path only
};

/// Exact path: fraction-free rank + cyclotomic zero set; the two counts are
/// cross-checked and a mismatch throws.
KrylovReport krylov_dimension(const std::vector<Rational>& w, int d);

/// Float path: SVD rank with a reported gap; throws AmbiguousRank when the
/// spectrum does not separate cleanly.
KrylovReport krylov_dimension(const VecD& w, int d, unsigned bits = 128);

class UnclassifiedDimension : public std::runtime_error {
 public:
  explicit UnclassifiedDimension(int d)
      : std::runtime_error("support classification is enumerated only for d in {2,3}; got d=" +
                           std::to_string(d)) {}
};

struct SupportClass {
  int d = 0;
  std::string label;
  int dimension = 0;
  std::vector<int> zero_set;
  std::vector<VecD> spanning;
};

/// Maps the exact zero set of u to the enumerated support classes
/// (3 classes for d=2, 7 for d=3).
SupportClass classify_support(const std::vector<Rational>& w, int d);

/// Closed form det(w, Kw, K^2 w) = (x+z)((x+y)^2 + (y+z)^2) for d=2.
std::int64_t det3_closed_form(std::int64_t x, std::int64_t y, std::int64_t z);
/// Direct integer determinant of the d=2 Krylov block.
std::int64_t det3_direct(std::int64_t x, std::int64_t y, std::int64_t z);

struct SupportEvidence {
  std::int64_t samples = 0;
  double full_dimension_fraction = 0.0;
  VecD mean;                  // coordinate means of W
  VecD mean_se;
  double max_mean_z = 0.0;    // largest pairwise z-score between coordinate means
  double min_abs_u = 0.0;     // smallest |u_j|/||w|| seen across all samples
  double median_min_abs_u = 0.0;
};

/// Numeric evidence for full support: fraction of samples with full Krylov
/// dimension plus margin statistics of the linear conditions. This is
/// evidence output only, never a classification verdict.
SupportEvidence support_evidence(const MatD& samples, int d, unsigned bits = 128,
                                 double tolerance = 1e-20);

/// Eigenvector matrix P (columns z_k) and its closed-form inverse, split
/// into real and imaginary parts for verification tests.
void build_P(int d, unsigned bits, MatX<Real>& re, MatX<Real>& im);
void build_P_inverse(int d, unsigned bits, MatX<Real>& re, MatX<Real>& im);

}  // namespace elephant
