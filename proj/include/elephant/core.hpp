#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace elephant {

namespace mp = boost::multiprecision;

/// Exact rational scalar (GMP backed).
using Rational = mp::mpq_rational;
using BigInt = mp::mpz_int;

/// Arbitrary-precision real scalar (MPFR backed, runtime precision).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

}  // namespace elephant

namespace Eigen {

// Boost 1.74 ships NumTraits for multiprecision types, but without the
// infinity()/quiet_NaN() members Eigen 3.4 needs inside its tridiagonal QR.
template <>
struct NumTraits<elephant::Real> : GenericNumTraits<elephant::Real> {
  typedef elephant::Real Real;
  typedef elephant::Real NonInteger;
  typedef elephant::Real Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 40
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return (std::numeric_limits<Real>::lowest)(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(elephant::Real::default_precision()); }
};

}  // namespace Eigen

namespace elephant {

template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecD = VecX<double>;
using MatD = MatX<double>;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

/// Scoped default precision for Real, expressed in bits of mantissa.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : saved_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Parses "n", "-n" or "n/d". Decimal notation is rejected: exact-mode
/// parameters must be supplied as true rationals, not floats.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos)
    throw std::invalid_argument("exact mode requires a rational like 87/100, got: " + text);
  try {
    Rational r(text);
    if (denominator(r) == 0) throw std::invalid_argument("zero denominator");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational: " + text);
  }
}

inline Real to_real(const Rational& r) {
  return Real(numerator(r).str()) / Real(denominator(r).str());
}

}  // namespace elephant
