#include "sicnet/rng.hpp"

#include <random>

namespace sicnet {

double SplitMix64::exponential() { return std::exponential_distribution<double>(1.0)(*this); }

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index) {
  const std::uint64_t key = SplitMix64::mix(seed) ^ ((trial_index + 1) * 0xd1342543de82ef95ULL);
  return SplitMix64(SplitMix64::mix(key));
}

std::uint64_t poisson(SplitMix64& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::poisson_distribution<long long>(mean)(rng));
}

}  // namespace sicnet
