// rng.hpp: counter-based deterministic random streams and the bounded-noise
// inverse CDF. Every draw is a pure function of (seed, stream, chain, step,
// draw), so results are bit-identical under any scheduling or worker count.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <cstdint>

namespace benard {

// SplitMix64 finalizer: a bijective 64-bit mixer with good avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash a 5-word key into one 64-bit word by chaining the mixer.
inline std::uint64_t key_hash(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t chain, std::uint64_t step,
                              std::uint64_t draw) {
  std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ stream);
  h = mix64(h ^ chain);
  h = mix64(h ^ step);
  h = mix64(h ^ draw);
  return h;
}

// Named stream tags. Tests may use values >= 1000 for ad-hoc streams.
namespace stream {
constexpr std::uint64_t kNoise = 1;         // forcing coefficients per unit
constexpr std::uint64_t kInitialBall = 2;   // random initial-state ensembles
constexpr std::uint64_t kDissipativity = 3; // horizontal seeds for decay runs
constexpr std::uint64_t kDictionary = 4;    // observable dictionary
constexpr std::uint64_t kDualityPair = 5;   // random (zeta, psi1) pairs
constexpr std::uint64_t kControlTrial = 6;  // random targets for control runs
constexpr std::uint64_t kDensityProbe = 7;  // random controls for the Gram map
constexpr std::uint64_t kValidation = 8;    // self-validation probe fields
}  // namespace stream

// Map a hash to a uniform double in the open interval (0, 1).
inline double uniform01(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform double in (-1, 1).
inline double uniform_sym(std::uint64_t h) { return 2.0 * uniform01(h) - 1.0; }

// Inverse CDF of the bounded noise density rho(x) = (15/16)(1 - x^2)^2 on
// [-1, 1] (variance 1/7). Solved by a bisection-safeguarded Newton iteration
// to ~1e-15; rho vanishes at the endpoints, so the safeguard is required.
double bounded_noise_icdf(double u);

// Counting draw stream over a fixed (seed, stream, chain, step) key.
class DrawStream {
 public:
  DrawStream(std::uint64_t seed, std::uint64_t stream_tag, std::uint64_t chain,
             std::uint64_t step)
      : seed_(seed), stream_(stream_tag), chain_(chain), step_(step) {}

  std::uint64_t next_u64() {
    return key_hash(seed_, stream_, chain_, step_, draw_++);
  }
  double next_uniform01() { return uniform01(next_u64()); }
  double next_uniform_sym() { return uniform_sym(next_u64()); }
  double next_bounded() { return bounded_noise_icdf(next_uniform01()); }

 private:
  std::uint64_t seed_, stream_, chain_, step_;
  std::uint64_t draw_ = 0;
};

}  // namespace benard
