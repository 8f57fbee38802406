// observables.hpp: bounded observable dictionary and low-mode random fields.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "benard/aligned.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/rng.hpp"

namespace benard {

// Adds a random combination of low horizontal modes (|k_alpha| <= kmax_h)
// and low vertical Dirichlet modes sin(pi nu x3) (1 <= nu <= numax) to a
// spectral field. Coefficients are symmetric-uniform draws consumed from the
// stream in a fixed order (reps sorted by (k2, k1), cosine before sine,
// nu ascending), so equal streams give identical fields.
void add_low_mode_field(const Grid& grid, DrawStream& draws, int kmax_h,
                        int numax, std::complex<double>* out);

// Deterministic random field with exact H1 norm `radius` (key: seed, stream
// tag, chain). Low modes only, so the result is smooth and CFL-friendly.
void random_ball_field(const Grid& grid, std::uint64_t seed,
                       std::uint64_t stream_tag, std::uint64_t chain,
                       double radius, ScalarField& out);

// Dictionary of bounded observables f_i(S) = tanh(<g_i, S> / s_i) with g_i a
// deterministic random low-mode field and s_i = ||g_i||_{L2}. The dictionary
// depends only on (grid, count, seed), never on the trajectory, so ensemble
// averages from different runs are directly comparable.
class ObservableDictionary {
 public:
  ObservableDictionary(const Grid& grid, int count, std::uint64_t seed);

  int size() const { return static_cast<int>(scales_.size()); }
  double evaluate(int i, const std::complex<double>* s_hat) const;

  // Test access: the raw field and its normalization.
  const std::complex<double>* field(int i) const { return fields_[i].data(); }
  double scale(int i) const { return scales_[i]; }

 private:
  const Grid* grid_;
  std::vector<ComplexArray> fields_;
  std::vector<double> scales_;
};

}  // namespace benard
