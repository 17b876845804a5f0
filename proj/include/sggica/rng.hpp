#pragma once

#include <array>
#include <cstdint>

namespace sggica {

// Deterministic random stream: xoshiro256++ seeded through splitmix64.
// The algorithms and constants are fixed so that identical seeds reproduce
// identical draws on any platform; see rng.cpp for the update rules.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on (0, 1].
  double uniform01();

  // Standard normal via Box-Muller (one value per pair of uniforms).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze, with the U^{1/shape}
  // boost for shape < 1.
  double gamma(double shape);

 private:
  std::array<std::uint64_t, 4> state_;
};

// Derives an independent stream seed from (seed, salt); used to give
// restarts and channels their own reproducible streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sggica
