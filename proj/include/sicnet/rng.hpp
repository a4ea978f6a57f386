#pragma once

#include <cstdint>
#include <limits>

namespace sicnet {

/// SplitMix64: output i is a bijective mix of state + i * golden_gamma, so a
/// stream is fully described by its starting state. Satisfies
/// UniformRandomBitGenerator for use with <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_low() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  /// Unit-mean exponential (std::exponential_distribution).
  double exponential();

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for one trial: state = mix(mix(seed) ^ (trial + 1) * C).
/// Depends only on (seed, trial_index), never on scheduling.
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index);

/// Poisson variate (std::poisson_distribution).
std::uint64_t poisson(SplitMix64& rng, double mean);

}  // namespace sicnet
