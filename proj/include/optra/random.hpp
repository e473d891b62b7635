// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

// Portable deterministic random streams. The exact algorithms are fixed so
// that ports to other languages reproduce every generated instance:
//
//   * state seeding: four successive splitmix64 outputs of the user seed;
//   * generator: xoshiro256** (Blackman & Vigna);
//   * uniform(0,1): (next() >> 11) * 2^-53, redrawn while equal to 0;
//   * normal: Box-Muller, u1/u2 uniform, z0 = r cos(2 pi u2) returned first,
//     z1 = r sin(2 pi u2) cached for the following call.

#ifndef OPTRA_RANDOM_HPP
#define OPTRA_RANDOM_HPP

#include <cstdint>

namespace optra {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent seed for a named sub-stream of one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (stream * 0xD1B54A32D192ED03ULL);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace optra

#endif  // OPTRA_RANDOM_HPP
