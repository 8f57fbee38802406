// field.hpp: scalar fields on the slab, stored canonically in spectral form.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>

#include "benard/aligned.hpp"
#include "benard/grid.hpp"
#include "benard/transforms.hpp"

namespace benard {

// A real scalar field stored as its retained spectral coefficients
// (mode-major; see Grid). Invariants maintained by this class: coefficients
// outside the dealiased band are zero, and the k2 = 0 line is
// conjugate-symmetric (both follow automatically when loading from real
// physical data).
class ScalarField {
 public:
  explicit ScalarField(const Grid& g) : grid_(&g), spec_(g.n_spec()) {}

  const Grid& grid() const { return *grid_; }
  std::complex<double>* spec() { return spec_.data(); }
  const std::complex<double>* spec() const { return spec_.data(); }
  std::size_t size() const { return spec_.size(); }

  void zero() { spec_.fill_zero(); }

  // Zero every coefficient outside the retained band.
  void dealias();

  // Load from physical values (forward transform + dealias).
  void from_physical(Fft& fft, const double* phys);

  // Render physical values; the field itself is unchanged.
  void to_physical(Fft& fft, double* phys) const;

  void scale(double a);
  void add_scaled(const ScalarField& o, double a);

 private:
  const Grid* grid_;
  ComplexArray spec_;
};

}  // namespace benard
