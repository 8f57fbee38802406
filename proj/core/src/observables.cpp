// observables.cpp: bounded observable dictionary and low-mode random fields.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/observables.hpp"

#include <cmath>

#include "benard/errors.hpp"
#include "benard/norms.hpp"

namespace benard {

void add_low_mode_field(const Grid& grid, DrawStream& draws, int kmax_h,
                        int numax, std::complex<double>* out) {
  if (kmax_h > grid.kmax1() || kmax_h > grid.kmax2()) {
    throw ConfigError("low-mode field: horizontal band exceeds retained modes");
  }
  const int nz = grid.nz();
  // Vertical Dirichlet profiles sampled at the nodes.
  std::vector<double> prof(static_cast<std::size_t>(numax) * nz);
  for (int nu = 1; nu <= numax; ++nu) {
    for (int j = 0; j < nz; ++j) {
      prof[static_cast<std::size_t>(nu - 1) * nz + j] =
          std::sin(Grid::kPi * nu * j * grid.h());
    }
  }
  // Canonical horizontal representatives, sorted by (k2, k1).
  for (int k2 = 0; k2 <= kmax_h; ++k2) {
    for (int k1 = (k2 == 0 ? 0 : -kmax_h); k1 <= kmax_h; ++k1) {
      const bool mean_mode = (k1 == 0 && k2 == 0);
      const int trigs = mean_mode ? 1 : 2;
      for (int trig = 0; trig < trigs; ++trig) {
        for (int nu = 1; nu <= numax; ++nu) {
          const double c = draws.next_uniform_sym();
          const double* p = prof.data() + static_cast<std::size_t>(nu - 1) * nz;
          if (mean_mode) {
            std::complex<double>* col = out + grid.spec_index(0, 0, 0);
            for (int j = 1; j < nz - 1; ++j) col[j] += c * p[j];
            continue;
          }
          const int i1 = (k1 + grid.n1()) % grid.n1();
          const std::complex<double> coeff =
              (trig == 1) ? std::complex<double>(0.0, -0.5 * c)
                          : std::complex<double>(0.5 * c, 0.0);
          std::complex<double>* col = out + grid.spec_index(i1, k2, 0);
          for (int j = 1; j < nz - 1; ++j) col[j] += coeff * p[j];
          if (k2 == 0) {
            std::complex<double>* mir =
                out + grid.spec_index(grid.mirror_i1(i1), 0, 0);
            const std::complex<double> cc = std::conj(coeff);
            for (int j = 1; j < nz - 1; ++j) mir[j] += cc * p[j];
          }
        }
      }
    }
  }
}

void random_ball_field(const Grid& grid, std::uint64_t seed,
                       std::uint64_t stream_tag, std::uint64_t chain,
                       double radius, ScalarField& out) {
  out.zero();
  DrawStream draws(seed, stream_tag, chain, 0);
  add_low_mode_field(grid, draws, 2, 3, out.spec());
  const double norm = h1_norm(grid, out.spec());
  if (norm <= 0.0) {
    throw SolverError("random ball field degenerated to zero");
  }
  out.scale(radius / norm);
}

ObservableDictionary::ObservableDictionary(const Grid& grid, int count,
                                           std::uint64_t seed)
    : grid_(&grid) {
  fields_.reserve(count);
  scales_.reserve(count);
  for (int i = 0; i < count; ++i) {
    fields_.emplace_back(grid.n_spec());
    DrawStream draws(seed, stream::kDictionary, static_cast<std::uint64_t>(i),
                     0);
    add_low_mode_field(grid, draws, 2, 3, fields_.back().data());
    const double s = l2_norm(grid, fields_.back().data());
    if (s <= 0.0) {
      throw SolverError("observable dictionary field degenerated to zero");
    }
    scales_.push_back(s);
  }
}

double ObservableDictionary::evaluate(
    int i, const std::complex<double>* s_hat) const {
  return std::tanh(l2_inner(*grid_, fields_[i].data(), s_hat) / scales_[i]);
}

}  // namespace benard
