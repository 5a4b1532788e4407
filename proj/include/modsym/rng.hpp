#ifndef MODSYM_RNG_HPP
#define MODSYM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include <Eigen/Core>

namespace modsym {

/// Counter-based deterministic generator. Every draw is a pure function of
/// (seed, stream, counter), so independent consumers can derive their own
/// streams from one problem seed and reproduce byte-identical reports.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::string_view stream_label)
      : seed_(seed), stream_(fnv1a64(stream_label)) {}

  /// Derive a child stream (e.g. one per candidate label).
  CounterRng substream(std::string_view label) const {
    CounterRng r(*this);
    r.stream_ = fnv1a64(label) ^ (stream_ * 0x9e3779b97f4a7c15ULL);
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() {
    return mix(seed_ ^ rotl(stream_, 17) ^ (0x9e3779b97f4a7c15ULL * ++counter_));
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  /// Gaussian vector scaled to unit Euclidean norm.
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double nrm = v.norm();
    if (nrm < 1e-12) {
      v.setZero();
      v(0) = 1.0;
      return v;
    }
    return v / nrm;
  }

  static std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

} // namespace modsym

#endif
