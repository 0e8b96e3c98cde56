#include "elephant/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elephant/spectral.hpp"

namespace elephant {

void ParticlePopulation::validate() const {
  if (values.rows() < 1) throw std::invalid_argument("population: empty");
  if (!values.allFinite()) throw std::invalid_argument("population: non-finite entries");
  switch (variant) {
    case MapVariant::Scalar1D:
      if (values.cols() != 1) throw std::invalid_argument("population: scalar variant needs 1 column");
      break;
    case MapVariant::WVector:
      if (values.cols() != 2 * d - 1)
        throw std::invalid_argument("population: W variant needs 2d-1 columns");
      break;
    case MapVariant::YColorVector:
      if (values.cols() != 2 * d)
        throw std::invalid_argument("population: Y variant needs 2d columns");
      break;
  }
}

void iterate_map_1d(ParticlePopulation& pop, int steps, Rng& rng) {
  if (pop.variant != MapVariant::Scalar1D)
    throw std::invalid_argument("iterate_map_1d: wrong population variant");
  pop.validate();
  const double a = pop.a;
  if (!(a > 0.5 && a < 1.0)) throw std::invalid_argument("iterate_map_1d: a must lie in (1/2,1)");
  const double p = (1.0 + a) / 2.0;
  const auto n = static_cast<std::uint64_t>(pop.size());
  MatD next(pop.values.rows(), 1);
  for (int s = 0; s < steps; ++s) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const double v = rng.uniform();
      const int sign = rng.rademacher(p);
      const double x1 = pop.values(static_cast<Eigen::Index>(rng.below(n)), 0);
      const double x2 = pop.values(static_cast<Eigen::Index>(rng.below(n)), 0);
      next(static_cast<Eigen::Index>(i), 0) =
          std::pow(v, a) * x1 + sign * std::pow(1.0 - v, a) * x2;
    }
    pop.values.swap(next);
  }
}

void iterate_map_W(ParticlePopulation& pop, int steps, Rng& rng) {
  if (pop.variant != MapVariant::WVector)
    throw std::invalid_argument("iterate_map_W: wrong population variant");
  pop.validate();
  const double a = pop.a;
  if (!(a > 0.5 && a < 1.0)) throw std::invalid_argument("iterate_map_W: a must lie in (1/2,1)");
  const int d = pop.d;
  const int dim = 2 * d - 1;
  const double p = ((2.0 * d - 1.0) * a + 1.0) / (2.0 * d);

  // all powers K^0..K^{2d-1} as dense blocks
  std::vector<MatD> powers;
  powers.reserve(static_cast<std::size_t>(2 * d));
  MatD kd = build_K(d).cast<double>();
  MatD acc = MatD::Identity(dim, dim);
  for (int k = 0; k < 2 * d; ++k) {
    powers.push_back(acc);
    acc = kd * acc;
  }

  const auto n = static_cast<std::uint64_t>(pop.size());
  MatD next(pop.values.rows(), dim);
  VecD w2(dim);
  for (int s = 0; s < steps; ++s) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const double v = rng.uniform();
      int k = 0;
      if (!rng.bernoulli(p)) k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * d - 1)));
      const auto i1 = static_cast<Eigen::Index>(rng.below(n));
      const auto i2 = static_cast<Eigen::Index>(rng.below(n));
      w2.noalias() = powers[static_cast<std::size_t>(k)] * pop.values.row(i2).transpose();
      next.row(static_cast<Eigen::Index>(i)) =
          std::pow(v, a) * pop.values.row(i1) + std::pow(1.0 - v, a) * w2.transpose();
    }
    pop.values.swap(next);
  }
}

void iterate_map_Y(std::vector<ParticlePopulation>& pops, int steps, Rng& rng) {
  if (pops.empty()) throw std::invalid_argument("iterate_map_Y: no populations");
  const int d = pops.front().d;
  const int colors = 2 * d;
  if (static_cast<int>(pops.size()) != colors)
    throw std::invalid_argument("iterate_map_Y: need one population per color (2d)");
  const double a = pops.front().a;
  if (!(a > 0.5 && a < 1.0)) throw std::invalid_argument("iterate_map_Y: a must lie in (1/2,1)");
  const double p = ((2.0 * d - 1.0) * a + 1.0) / (2.0 * d);
  const auto n = static_cast<std::uint64_t>(pops.front().size());
  for (auto& pop : pops) {
    if (pop.variant != MapVariant::YColorVector || pop.d != d ||
        static_cast<std::uint64_t>(pop.size()) != n)
      throw std::invalid_argument("iterate_map_Y: inconsistent populations");
    pop.validate();
  }

  std::vector<MatD> next(pops.size());
  for (auto& m : next) m.resize(static_cast<Eigen::Index>(n), colors);
  for (int s = 0; s < steps; ++s) {
    for (std::uint64_t i = 0; i < n; ++i) {
      // one (V, shift, copy pair) shared by the whole color system
      const double v = rng.uniform();
      int shift = 0;
      if (!rng.bernoulli(p))
        shift = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(colors - 1)));
      const auto i1 = static_cast<Eigen::Index>(rng.below(n));
      const auto i2 = static_cast<Eigen::Index>(rng.below(n));
      const double va = std::pow(v, a);
      const double wa = std::pow(1.0 - v, a);
      for (int k = 0; k < colors; ++k) {
        // the shift branch starts the second subtree from color k + shift;
        // reading that population is the permutation action, entrywise exact
        const int k2 = (k + shift) % colors;
        next[static_cast<std::size_t>(k)].row(static_cast<Eigen::Index>(i)) =
            va * pops[static_cast<std::size_t>(k)].values.row(i1) +
            wa * pops[static_cast<std::size_t>(k2)].values.row(i2);
      }
    }
    for (int k = 0; k < colors; ++k) pops[static_cast<std::size_t>(k)].values.swap(next[static_cast<std::size_t>(k)]);
  }
}

double wasserstein2_1d(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("wasserstein2_1d: populations must have equal size");
  if (a.empty()) throw std::invalid_argument("wasserstein2_1d: empty populations");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double diff = sa[i] - sb[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(sa.size()));
}

double wasserstein2_1d(const VecD& a, const VecD& b) {
  return wasserstein2_1d(std::vector<double>(a.data(), a.data() + a.size()),
                         std::vector<double>(b.data(), b.data() + b.size()));
}

VecD wasserstein2_columns(const MatD& a, const MatD& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("wasserstein2_columns: dim mismatch");
  VecD out(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    out(j) = wasserstein2_1d(VecD(a.col(j)), VecD(b.col(j)));
  return out;
}

double energy_distance(const MatD& a, const MatD& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("energy_distance: dim mismatch");
  const Eigen::Index n = a.rows(), m = b.rows();
  double cross = 0.0, within_a = 0.0, within_b = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) cross += (a.row(i) - b.row(j)).norm();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) within_a += (a.row(i) - a.row(j)).norm();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) within_b += (b.row(i) - b.row(j)).norm();
  const double e = 2.0 * cross / (static_cast<double>(n) * m) -
                   within_a / (static_cast<double>(n) * n) -
                   within_b / (static_cast<double>(m) * m);
  return std::sqrt(std::max(0.0, e));
}

ContractionReport contraction_estimate(double a, const std::vector<double>& pop_a,
                                       const std::vector<double>& pop_b, int trials,
                                       Rng& rng) {
  if (!(a > 0.5 && a < 1.0))
    throw std::invalid_argument("contraction_estimate: a must lie in (1/2,1)");
  if (pop_a.size() != pop_b.size() || pop_a.size() < 2)
    throw std::invalid_argument("contraction_estimate: populations must have equal size >= 2");

  // the contraction statement lives on distributions of a fixed mean
  double mean_a = 0.0, mean_b = 0.0, var_a = 0.0, var_b = 0.0;
  for (double x : pop_a) mean_a += x;
  for (double x : pop_b) mean_b += x;
  const double n = static_cast<double>(pop_a.size());
  mean_a /= n;
  mean_b /= n;
  for (double x : pop_a) var_a += (x - mean_a) * (x - mean_a);
  for (double x : pop_b) var_b += (x - mean_b) * (x - mean_b);
  const double se = std::sqrt(var_a / (n * n) + var_b / (n * n));
  if (std::fabs(mean_a - mean_b) > 4.0 * se && se > 0.0)
    throw std::invalid_argument("contraction_estimate: population means differ by more than 4 SE");

  std::vector<double> qa = pop_a, qb = pop_b;
  std::sort(qa.begin(), qa.end());
  std::sort(qb.begin(), qb.end());

  ContractionReport report;
  report.theoretical_bound = std::sqrt(2.0 / (1.0 + 2.0 * a));
  report.pre_distance = wasserstein2_1d(qa, qb);
  if (report.pre_distance == 0.0) {
    report.trials = 0;  // 0/0 guard: identical inputs carry no ratio information
    return report;
  }

  const double p = (1.0 + a) / 2.0;
  const auto size = static_cast<std::uint64_t>(qa.size());
  std::vector<double> na(qa.size()), nb(qb.size());
  double post_acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < qa.size(); ++i) {
      const double v = rng.uniform();
      const int sign = rng.rademacher(p);
      const std::size_t i1 = static_cast<std::size_t>(rng.below(size));
      const std::size_t i2 = static_cast<std::size_t>(rng.below(size));
      const double va = std::pow(v, a);
      const double wa = sign * std::pow(1.0 - v, a);
      na[i] = va * qa[i1] + wa * qa[i2];
      nb[i] = va * qb[i1] + wa * qb[i2];
    }
    const double post = wasserstein2_1d(na, nb);
    const double ratio = post / report.pre_distance;
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    post_acc += post;
  }
  report.trials = trials;
  report.post_distance = post_acc / std::max(1, trials);
  report.ratio = report.post_distance / report.pre_distance;
  return report;
}

}  // namespace elephant
