#pragma once

#include <cstdint>

namespace nsspec {

// Counter-based Gaussian generator. Every variate is a pure function of
// (seed, stream, index), so generation is reproducible bit-for-bit under any
// parallel schedule. Streams map to realizations, indices to samples.
namespace rng {

/// splitmix64 finalizer (Vigna's mixer): bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Uniform 64-bit word for counter (seed, stream, index).
inline std::uint64_t word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (index + kGolden));
  return h;
}

/// Uniform double in (0, 1]; never 0 so log() stays finite.
inline double uniform_pos(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53;
}

/// Standard normal variate for counter (seed, stream, index), via Box-Muller
/// on two uniform words.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace rng
}  // namespace nsspec
