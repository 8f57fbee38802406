// grid.hpp: collocation-grid and spectral-mode bookkeeping for the slab
// T^2 x [0,1] (2*pi-periodic horizontally, walls at x3 = 0 and 1).
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <cstddef>
#include <vector>

#include "benard/errors.hpp"

namespace benard {

// One retained horizontal Fourier mode in the half-spectrum (r2c) layout.
struct Mode {
  int i1;              // storage row index, 0..n1-1
  int i2;              // storage column index, 0..n2/2 (only k2 >= 0 stored)
  int k1;              // signed wavenumber, i1 <= n1/2 ? i1 : i1 - n1
  int k2;              // wavenumber (== i2)
  double kappa2;       // k1^2 + k2^2
  std::size_t offset;  // index of vertical node j = 0 in the spectral array
  double weight;       // Parseval weight: 1 on the k2 = 0 line, else 2
};

// Grid geometry and layout conventions.
//
// Physical storage is x3-major: phys[j * n1 * n2 + i1 * n2 + i2], so each
// horizontal plane is contiguous for the batched 2-D transforms.
// Spectral storage is mode-major: spec[(i1 * (n2/2 + 1) + i2) * (n3 + 1) + j],
// so each mode's vertical column is contiguous for the per-mode solves.
// Spectral coefficients follow f(x) = sum_k fhat_k exp(i k . x_h), i.e. the
// forward transform carries the 1/(n1 n2) normalization.
class Grid {
 public:
  Grid(int n1, int n2, int n3);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  int nz() const { return n3_ + 1; }
  int n_half2() const { return n2_ / 2 + 1; }
  double h() const { return 1.0 / n3_; }
  double dx1() const { return 2.0 * kPi / n1_; }
  double dx2() const { return 2.0 * kPi / n2_; }

  std::size_t n_phys() const {
    return static_cast<std::size_t>(nz()) * n1_ * n2_;
  }
  std::size_t n_spec() const {
    return static_cast<std::size_t>(n1_) * n_half2() * nz();
  }

  std::size_t phys_index(int i1, int i2, int j) const {
    return (static_cast<std::size_t>(j) * n1_ + i1) * n2_ + i2;
  }
  std::size_t spec_index(int i1, int i2, int j) const {
    return (static_cast<std::size_t>(i1) * n_half2() + i2) * nz() + j;
  }

  int k1_of(int i1) const { return i1 <= n1_ / 2 ? i1 : i1 - n1_; }

  // Two-thirds dealiasing: products of two retained fields evaluated on this
  // grid are alias-free in the retained band because 3*kmax <= n.
  int kmax1() const { return n1_ / 3; }
  int kmax2() const { return n2_ / 3; }
  bool is_active(int i1, int i2) const {
    int k1 = k1_of(i1);
    return (k1 >= -kmax1() && k1 <= kmax1()) && i2 <= kmax2();
  }

  // Retained modes in deterministic storage order (i1-major). The k = 0 mode
  // is first. Modes on the k2 = 0 line appear with both signs of k1; their
  // coefficients must stay complex-conjugate mirrors of each other.
  const std::vector<Mode>& modes() const { return modes_; }

  // For a mode on the k2 = 0 line with i1 > 0, the storage row of its mirror.
  int mirror_i1(int i1) const { return i1 == 0 ? 0 : n1_ - i1; }

  // Trapezoid quadrature weight of vertical node j for integrals over [0,1].
  double wt(int j) const { return (j == 0 || j == n3_) ? 0.5 : 1.0; }

  static constexpr double kPi = 3.14159265358979323846;
  // Horizontal cross-section area |T^2| = (2 pi)^2.
  static constexpr double kArea = 4.0 * kPi * kPi;

 private:
  int n1_, n2_, n3_;
  std::vector<Mode> modes_;
};

}  // namespace benard
