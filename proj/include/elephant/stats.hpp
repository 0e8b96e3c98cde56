#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace elephant {

// ---------------------------------------------------------------------------
// Incomplete gamma (double precision), used by the chi-square p-value.
// Series for x < s+1, Lentz continued fraction otherwise.
// ---------------------------------------------------------------------------

inline double gamma_p(double s, double x) {
  if (x < 0 || s <= 0) throw std::invalid_argument("gamma_p domain");
  if (x == 0) return 0.0;
  const double lg = std::lgamma(s);
  if (x < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - lg);
  }
  // continued fraction for Q(s,x)
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + s * std::log(x) - lg) * h;
  return 1.0 - q;
}

inline double gamma_q(double s, double x) { return 1.0 - gamma_p(s, x); }

inline double chi2_pvalue(double stat, double dof) {
  if (dof <= 0) return 1.0;
  return gamma_q(dof / 2.0, stat / 2.0);
}

// ---------------------------------------------------------------------------
// Chi-square goodness of fit against exact bin probabilities.
// ---------------------------------------------------------------------------

struct Chi2Result {
  double stat = 0.0;
  int dof = 0;
  double pvalue = 1.0;
  int bins_used = 0;
};

/// observed[i] counts vs expected probability probs[i]. Bins are merged
/// left-to-right until the expected count reaches min_expected; zero-probability
/// bins must carry zero observations (otherwise the statistic is infinite).
inline Chi2Result chi2_gof(const std::vector<std::int64_t>& observed,
                           const std::vector<double>& probs,
                           double min_expected = 5.0) {
  if (observed.size() != probs.size())
    throw std::invalid_argument("chi2_gof: size mismatch");
  std::int64_t total = 0;
  for (auto c : observed) total += c;
  if (total <= 0) throw std::invalid_argument("chi2_gof: empty sample");

  std::vector<double> exp_merged;
  std::vector<double> obs_merged;
  double acc_e = 0.0;
  double acc_o = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) {
      if (observed[i] != 0) {
        return {std::numeric_limits<double>::infinity(),
                static_cast<int>(probs.size()), 0.0, static_cast<int>(probs.size())};
      }
      continue;
    }
    acc_e += probs[i] * static_cast<double>(total);
    acc_o += static_cast<double>(observed[i]);
    if (acc_e >= min_expected) {
      exp_merged.push_back(acc_e);
      obs_merged.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0) {
    if (!exp_merged.empty()) {
      exp_merged.back() += acc_e;
      obs_merged.back() += acc_o;
    } else {
      exp_merged.push_back(acc_e);
      obs_merged.push_back(acc_o);
    }
  }
  Chi2Result r;
  r.bins_used = static_cast<int>(exp_merged.size());
  for (std::size_t i = 0; i < exp_merged.size(); ++i) {
    const double diff = obs_merged[i] - exp_merged[i];
    r.stat += diff * diff / exp_merged[i];
  }
  r.dof = std::max(1, r.bins_used - 1);
  r.pvalue = chi2_pvalue(r.stat, r.dof);
  return r;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov one-sample test.
// ---------------------------------------------------------------------------

inline double kolmogorov_pvalue(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

struct KsResult {
  double d = 0.0;
  double pvalue = 1.0;
};

/// cdf must be the exact CDF of the null distribution.
template <class Cdf>
KsResult ks_test(std::vector<double> samples, Cdf&& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_pvalue((sn + 0.12 + 0.11 / sn) * d)};
}

// ---------------------------------------------------------------------------
// Raw-moment accumulator with standard errors (moments up to order 4).
// ---------------------------------------------------------------------------

class MomentAccumulator {
 public:
  void add(double x) {
    ++n_;
    double p = x;
    for (int k = 0; k < 8; ++k) {
      sums_[k] += p;
      p *= x;
    }
  }

  std::int64_t count() const { return n_; }

  /// Empirical E[X^k], k in 1..4.
  double moment(int k) const {
    check(k);
    return sums_[k - 1] / static_cast<double>(n_);
  }

  /// Standard error of the empirical k-th raw moment.
  double moment_se(int k) const {
    check(k);
    const double m = moment(k);
    const double m2 = sums_[2 * k - 1] / static_cast<double>(n_);
    const double var = std::max(0.0, m2 - m * m);
    return std::sqrt(var / static_cast<double>(n_));
  }

  double mean() const { return moment(1); }
  double variance() const {
    const double m = mean();
    return std::max(0.0, moment(2) - m * m);
  }
  double se_mean() const { return moment_se(1); }

  void merge(const MomentAccumulator& other) {
    n_ += other.n_;
    for (int k = 0; k < 8; ++k) sums_[k] += other.sums_[k];
  }

 private:
  void check(int k) const {
    if (k < 1 || k > 4) throw std::invalid_argument("moment order must be 1..4");
    if (n_ < 2) throw std::invalid_argument("need at least 2 samples");
  }
  std::int64_t n_ = 0;
  double sums_[8] = {0, 0, 0, 0, 0, 0, 0, 0};
};

/// Least-squares slope of y against x.
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("regression_slope: bad input");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace elephant
