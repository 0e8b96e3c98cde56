#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace elephant {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ keyed by (seed, stream index). Every replica of an ensemble
/// gets its own stream, so results do not depend on scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

  Rng(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t sm = seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
    s_[0] = splitmix64(sm);
    s_[1] = splitmix64(sm);
    s_[2] = splitmix64(sm);
    s_[3] = splitmix64(sm);
    // an all-zero state is the one forbidden xoshiro state
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1].
  double uniform_pos() { return 1.0 - uniform(); }

  /// Unbiased uniform integer on {0, ..., n-1}.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// +1 with probability p, else -1.
  int rademacher(double p) { return bernoulli(p) ? 1 : -1; }

  double exponential() { return -std::log(uniform_pos()); }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(2.0 * exponential());
    const double theta = 6.283185307179586476925287 * uniform();
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  /// Geometric on {1,2,...} with success probability 1-a (failure prob a).
  std::int64_t geometric_from_failure(double a) {
    if (a <= 0.0) return 1;
    const double u = uniform_pos();
    const double g = std::ceil(std::log(u) / std::log(a));
    return g < 1.0 ? 1 : static_cast<std::int64_t>(g);
  }

  /// Index sampled from a probability vector (prefix-sum scan).
  template <class Container>
  int discrete(const Container& probs) {
    double u = uniform();
    int last = 0;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
      last = i;
      u -= static_cast<double>(probs[i]);
      if (u < 0.0) return i;
    }
    return last;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace elephant
