// stokes.hpp: per-mode solver for the buoyancy-driven Stokes flow map
// theta -> M(theta) at infinite Prandtl number, plus its exact discrete
// adjoint and dense per-mode coupling blocks for implicit time stepping.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "benard/grid.hpp"

namespace benard {

// For each horizontal mode k != 0 the no-slip Stokes problem reduces to the
// quartic two-point problem
//   (D^2 - kappa^2)^2 w = Ra kappa^2 theta_k,   w(0) = w(1) = Dw(0) = Dw(1) = 0,
// discretized with second-order differences. The derivative conditions enter
// by folding the reflected ghost value (w_{-1} = w_1) into the biharmonic
// stencil, which turns the wall-adjacent quartic row into [7 -4 1]/h^4 and
// makes the reduced interior matrix
//   B = D4 - 2 kappa^2 L + kappa^4 I
// symmetric positive definite; each mode keeps one banded Cholesky
// factorization. Horizontal velocity is reconstructed from incompressibility,
//   u_h = (i k / kappa^2) D w,
// with the centered difference D clamped to zero at the walls, so the discrete
// divergence i k . u_h + D w vanishes identically at every node. The k = 0
// mode carries no flow.
class StokesSolver {
 public:
  StokesSolver(const Grid& g, double rayleigh);

  const Grid& grid() const { return *grid_; }
  double rayleigh() const { return ra_; }
  int interior() const { return grid_->n3() - 1; }

  // velocity = M(theta): spectral scalar in, three spectral components out.
  // All wall planes and the k = 0 columns of the output are exactly zero.
  void apply_M(const std::complex<double>* theta, std::complex<double>* u1,
               std::complex<double>* u2, std::complex<double>* u3) const;

  // Vertical component only (the part the temperature equation couples to).
  void apply_M3(const std::complex<double>* theta,
                std::complex<double>* u3) const;

  // Exact discrete adjoint of apply_M in the trapezoid-weighted L2 pairing:
  // <M theta, f> = <theta, M* f> to round-off for wall-vanishing theta.
  // Built from the same factorizations: the quartic matrix is symmetric and
  // the transpose of the clamped difference is the negated difference of the
  // wall-zeroed input.
  void apply_M_star(const std::complex<double>* f1,
                    const std::complex<double>* f2,
                    const std::complex<double>* f3,
                    std::complex<double>* out) const;

  // Dense interior matrix of theta_k -> (M3 theta)_k = Ra kappa^2 B^{-1},
  // row-major (n3-1)^2, for the implicit treatment of the linear coupling.
  // Symmetric to round-off; identically zero for kappa = 0.
  const std::vector<double>& coupling_block(std::size_t mode_index) const {
    return factors_[mode_index].coupling;
  }

  // Solve (D^2 - kappa^2)^2 v = rhs for one mode (interior values in and out,
  // wall closure as above). Exposed for the adjoint and for tests.
  void quartic_solve(std::size_t mode_index,
                     const std::complex<double>* rhs_interior,
                     std::complex<double>* v_interior) const;

 private:
  struct ModeFactor {
    std::vector<double> chol;      // banded Cholesky, ldab = 3, col-major
    std::vector<double> coupling;  // dense Ra kappa^2 B^{-1}, row-major
  };

  const Grid* grid_;
  double ra_;
  std::vector<ModeFactor> factors_;  // parallel to grid().modes()
};

// Discrete divergence i k . u_h + D(u3) with the clamped vertical difference
// (the convention under which apply_M is exactly divergence-free).
void divergence(const Grid& g, const std::complex<double>* u1,
                const std::complex<double>* u2, const std::complex<double>* u3,
                std::complex<double>* div);

}  // namespace benard
