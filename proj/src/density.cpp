#include "elephant/density.hpp"

namespace elephant {

HistogramComparison histogram_compare(std::vector<double> samples, const DensityCurve& curve,
                                      int bins) {
  if (samples.size() < 100)
    throw std::invalid_argument("histogram_compare: need at least 100 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());

  const double lo = std::min(samples.front(), curve.x(0));
  const double hi = std::max(samples.back(), curve.x(curve.x.size() - 1));
  if (bins <= 0) {
    const double q1 = samples[static_cast<std::size_t>(0.25 * (n - 1))];
    const double q3 = samples[static_cast<std::size_t>(0.75 * (n - 1))];
    const double iqr = std::max(q3 - q1, 1e-12);
    const double width = 2.0 * iqr / std::cbrt(n);
    bins = static_cast<int>(std::ceil((hi - lo) / width));
    bins = std::clamp(bins, 8, 400);
  }
  const double width = (hi - lo) / bins;

  // cumulative curve mass on its own grid (trapezoid), then interpolated
  std::vector<double> cum(static_cast<std::size_t>(curve.x.size()), 0.0);
  for (Eigen::Index g = 0; g + 1 < curve.x.size(); ++g)
    cum[static_cast<std::size_t>(g) + 1] =
        cum[static_cast<std::size_t>(g)] +
        0.5 * (curve.f(g) + curve.f(g + 1)) * (curve.x(g + 1) - curve.x(g));
  auto curve_cdf = [&](double x) -> double {
    if (x <= curve.x(0)) return 0.0;
    const Eigen::Index m = curve.x.size();
    if (x >= curve.x(m - 1)) return cum[static_cast<std::size_t>(m - 1)];
    Eigen::Index lo_idx = 0, hi_idx = m - 1;
    while (hi_idx - lo_idx > 1) {
      const Eigen::Index mid = (lo_idx + hi_idx) / 2;
      (curve.x(mid) <= x ? lo_idx : hi_idx) = mid;
    }
    const double t = (x - curve.x(lo_idx)) / (curve.x(hi_idx) - curve.x(lo_idx));
    return cum[static_cast<std::size_t>(lo_idx)] +
           t * (cum[static_cast<std::size_t>(hi_idx)] - cum[static_cast<std::size_t>(lo_idx)]);
  };

  HistogramComparison out;
  out.bins = bins;
  std::size_t idx = 0;
  double emp_cum = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double e_lo = lo + b * width;
    const double e_hi = (b == bins - 1) ? hi : lo + (b + 1) * width;
    std::size_t count = 0;
    while (idx < samples.size() && (samples[idx] < e_hi || b == bins - 1)) {
      ++count;
      ++idx;
    }
    const double emp_mass = static_cast<double>(count) / n;
    const double curve_mass = curve_cdf(e_hi) - curve_cdf(e_lo);
    out.l1 += std::fabs(emp_mass - curve_mass);
    out.sup = std::max(out.sup, std::fabs(emp_mass - curve_mass) / width);
    emp_cum += emp_mass;
    out.ks = std::max(out.ks, std::fabs(emp_cum - curve_cdf(e_hi)));
  }
  // curve mass outside the binned range counts as discrepancy
  const double outside =
      curve_cdf(lo) + (cum.back() - curve_cdf(hi));
  out.l1 += outside;
  return out;
}

}  // namespace elephant
