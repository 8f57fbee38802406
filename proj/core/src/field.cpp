// field.cpp: ScalarField implementation.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/field.hpp"

namespace benard {

void ScalarField::dealias() {
  const Grid& g = *grid_;
  const int nz = g.nz();
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n_half2(); ++i2) {
      if (g.is_active(i1, i2)) continue;
      std::complex<double>* col = spec_.data() + g.spec_index(i1, i2, 0);
      for (int j = 0; j < nz; ++j) col[j] = 0.0;
    }
  }
}

void ScalarField::from_physical(Fft& fft, const double* phys) {
  fft.forward(phys, spec_.data());
  dealias();
}

void ScalarField::to_physical(Fft& fft, double* phys) const {
  fft.backward(spec_.data(), phys);
}

void ScalarField::scale(double a) {
  for (auto& v : spec_) v *= a;
}

void ScalarField::add_scaled(const ScalarField& o, double a) {
  for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += a * o.spec_[i];
}

}  // namespace benard
