#pragma once

#include <cstdint>
#include <random>

namespace uavnet {

using Rng = std::mt19937_64;

// Independent, reproducible stream for one consumer of a run seed.
enum class Stream : std::uint32_t {
  kCity = 1,
  kUsers = 2,
  kTrajectory = 3,
  kFading = 4,
  kUavs = 5,
  kClusterInit = 6,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace uavnet
