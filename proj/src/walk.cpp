#include "elephant/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "elephant/parallel.hpp"

namespace elephant {

void WalkConfig::validate() const {
  if (d < 1) throw std::invalid_argument("walk: dimension must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("walk: p must lie in [0,1]");
  if (n < 1) throw std::invalid_argument("walk: horizon must be >= 1");
  if (static_cast<int>(q.size()) != 2 * d)
    throw std::invalid_argument("walk: q must have length 2d");
  double total = 0.0;
  for (double qi : q) {
    if (qi < 0.0) throw std::invalid_argument("walk: q entries must be nonnegative");
    total += qi;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("walk: q must sum to 1 within 1e-12");
}

Eigen::VectorXi direction_vector(int d, int code) {
  Eigen::VectorXi v = Eigen::VectorXi::Zero(d);
  v(code / 2) = (code % 2 == 0) ? 1 : -1;
  return v;
}

namespace {

inline void fill_steps(const WalkConfig& cfg, std::uint64_t replica,
                       std::vector<std::uint8_t>& steps) {
  Rng rng(cfg.seed, replica);
  steps.resize(static_cast<std::size_t>(cfg.n));
  const int dirs = 2 * cfg.d;
  steps[0] = static_cast<std::uint8_t>(rng.discrete(cfg.q));
  for (std::int64_t t = 1; t < cfg.n; ++t) {
    const std::uint64_t k = rng.below(static_cast<std::uint64_t>(t));
    std::uint8_t s = steps[static_cast<std::size_t>(k)];
    if (!rng.bernoulli(cfg.p)) {
      // redirect uniformly over the other 2d-1 signed directions
      const std::uint64_t r = rng.below(static_cast<std::uint64_t>(dirs - 1));
      s = static_cast<std::uint8_t>(r + (r >= s ? 1 : 0));
    }
    steps[static_cast<std::size_t>(t)] = s;
  }
}

inline Eigen::VectorXi endpoint_from_steps(int d, const std::vector<std::uint8_t>& steps) {
  Eigen::VectorXi pos = Eigen::VectorXi::Zero(d);
  for (std::uint8_t s : steps) pos(s / 2) += (s % 2 == 0) ? 1 : -1;
  return pos;
}

}  // namespace

Trajectory simulate_walk(const WalkConfig& config, std::uint64_t replica) {
  config.validate();
  Trajectory traj;
  traj.d = config.d;
  fill_steps(config, replica, traj.steps);
  return traj;
}

Eigen::VectorXi simulate_endpoint(const WalkConfig& config, std::uint64_t replica,
                                  std::vector<std::uint8_t>& scratch) {
  fill_steps(config, replica, scratch);
  return endpoint_from_steps(config.d, scratch);
}

Eigen::VectorXi Trajectory::endpoint() const { return endpoint_from_steps(d, steps); }

std::vector<Eigen::VectorXi> Trajectory::positions() const {
  std::vector<Eigen::VectorXi> out;
  out.reserve(steps.size() + 1);
  Eigen::VectorXi pos = Eigen::VectorXi::Zero(d);
  out.push_back(pos);
  for (std::uint8_t s : steps) {
    pos(s / 2) += (s % 2 == 0) ? 1 : -1;
    out.push_back(pos);
  }
  return out;
}

VecD normalized_endpoint(const Trajectory& traj, double a) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("normalized_endpoint: a must lie in (0,1]");
  if (traj.steps.empty()) throw std::invalid_argument("normalized_endpoint: empty trajectory");
  const double n = static_cast<double>(traj.steps.size());
  return traj.endpoint().cast<double>() / std::pow(n, a);
}

LimitEnsemble sample_limit_ensemble(const WalkConfig& config, std::int64_t replicas) {
  config.validate();
  if (replicas < 1) throw std::invalid_argument("ensemble: replicas must be >= 1");
  LimitEnsemble ens;
  ens.d = config.d;
  ens.a = config.exponent();
  ens.n = config.n;
  ens.values.resize(replicas, config.d);
  const double scale = std::pow(static_cast<double>(config.n), ens.a);
  parallel_for_replicas(static_cast<std::uint64_t>(replicas),
                        [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                          std::vector<std::uint8_t> scratch;
                          for (std::uint64_t r = begin; r < end; ++r) {
                            const Eigen::VectorXi e = simulate_endpoint(config, r, scratch);
                            ens.values.row(static_cast<Eigen::Index>(r)) =
                                e.cast<double>().transpose() / scale;
                          }
                        });
  return ens;
}

EnsembleMoments estimate_limit_moments(const LimitEnsemble& ensemble) {
  const Eigen::Index n = ensemble.values.rows();
  const Eigen::Index d = ensemble.values.cols();
  if (n < 2) throw std::invalid_argument("estimate_limit_moments: need >= 2 replicas");
  EnsembleMoments out;
  out.count = n;
  out.mean = ensemble.values.colwise().mean();
  out.mean_se.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var =
        (ensemble.values.col(j).array() - out.mean(j)).square().sum() / static_cast<double>(n);
    out.mean_se(j) = std::sqrt(var / static_cast<double>(n));
  }
  out.second.resize(d, d);
  out.second_se.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto prod = (ensemble.values.col(i).array() * ensemble.values.col(j).array());
      const double m = prod.mean();
      const double var = (prod - m).square().sum() / static_cast<double>(n);
      out.second(i, j) = m;
      out.second_se(i, j) = std::sqrt(var / static_cast<double>(n));
    }
  }
  return out;
}

FluctuationSample fluctuation_sample(const WalkConfig& config, std::int64_t n,
                                     std::int64_t horizon, std::int64_t replicas) {
  WalkConfig cfg = config;
  cfg.n = horizon;
  cfg.validate();
  if (cfg.d != 1) throw std::invalid_argument("fluctuation_sample: dimension must be 1");
  if (n >= horizon) throw std::invalid_argument("fluctuation_sample: need n < N");
  if (n < 1) throw std::invalid_argument("fluctuation_sample: need n >= 1");
  const double a = cfg.exponent();
  if (!(a > 0.5)) throw std::invalid_argument("fluctuation_sample: need a > 1/2");

  FluctuationSample out;
  out.a = a;
  out.bias_factor =
      1.0 - std::pow(static_cast<double>(n) / static_cast<double>(horizon), 2.0 * a - 1.0);
  out.values.resize(static_cast<std::size_t>(replicas));
  const double scale_n = std::pow(static_cast<double>(n), a);
  const double scale_horizon = std::pow(static_cast<double>(horizon), a);
  const double amp = std::sqrt(std::pow(static_cast<double>(n), 2.0 * a - 1.0));

  parallel_for_replicas(static_cast<std::uint64_t>(replicas),
                        [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                          std::vector<std::uint8_t> steps;
                          for (std::uint64_t r = begin; r < end; ++r) {
                            fill_steps(cfg, r, steps);
                            std::int64_t s = 0;
                            std::int64_t s_at_n = 0;
                            for (std::int64_t t = 0; t < horizon; ++t) {
                              s += (steps[static_cast<std::size_t>(t)] % 2 == 0) ? 1 : -1;
                              if (t + 1 == n) s_at_n = s;
                            }
                            out.values[static_cast<std::size_t>(r)] =
                                amp * (static_cast<double>(s_at_n) / scale_n -
                                       static_cast<double>(s) / scale_horizon);
                          }
                        });
  return out;
}

VecD predicted_limit_mean(int d, double a, const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != 2 * d)
    throw std::invalid_argument("predicted_limit_mean: q must have length 2d");
  VecD mean(d);
  const double g = std::tgamma(1.0 + a);
  for (int i = 0; i < d; ++i) mean(i) = (q[2 * i] - q[2 * i + 1]) / g;
  return mean;
}

MatD predicted_limit_second_moment(int d, double a, const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != 2 * d)
    throw std::invalid_argument("predicted_limit_second_moment: q must have length 2d");
  const double g2a = std::tgamma(2.0 * a);
  const double diag_c = 1.0 / (2.0 * d * a * (2.0 * a - 1.0) * g2a);
  MatD m = MatD::Identity(d, d) * diag_c;
  const double g2a1 = std::tgamma(2.0 * a + 1.0);
  for (int i = 0; i < d; ++i) m(i, i) += (q[2 * i] + q[2 * i + 1]) / g2a1;
  return m;
}

}  // namespace elephant
