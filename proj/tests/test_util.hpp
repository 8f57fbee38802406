// test_util.hpp: shared helpers for the unit tests.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstdint>

#include "benard/aligned.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/rng.hpp"
#include "benard/transforms.hpp"

namespace benard::test {

// Ad-hoc stream tags (>= 1000 per the rng contract).
constexpr std::uint64_t kTestStream = 1000;

// Fills a spectral array with a random wall-vanishing, dealiased, real field:
// uniform physical noise with zeroed wall planes, pushed through the forward
// transform. Useful wherever "generic admissible state" is needed.
inline void random_state(const Grid& g, Fft& fft, std::uint64_t seed,
                         std::uint64_t chain, std::complex<double>* out,
                         double scale = 1.0) {
  RealArray phys(g.n_phys());
  DrawStream draws(seed, kTestStream, chain, 0);
  for (std::size_t i = 0; i < g.n_phys(); ++i) {
    phys[i] = scale * draws.next_uniform_sym();
  }
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  for (std::size_t i = 0; i < plane; ++i) {
    phys[i] = 0.0;
    phys[static_cast<std::size_t>(g.n3()) * plane + i] = 0.0;
  }
  ScalarField f(g);
  f.from_physical(fft, phys.data());
  for (std::size_t i = 0; i < g.n_spec(); ++i) out[i] = f.spec()[i];
}

}  // namespace benard::test
