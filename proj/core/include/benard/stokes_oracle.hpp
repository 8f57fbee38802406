// stokes_oracle.hpp: reference Stokes solve via a dense primitive-variable
// discretization with staggered pressure, for validating the quartic solver.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "benard/grid.hpp"

namespace benard {

// Independent discretization of the no-slip Stokes problem
//   -Delta u + grad p = (Ra theta) e3,  div u = 0,  u = 0 at the walls,
// kept deliberately different from the production route: per mode it solves
// the full primitive-variable system with w at the n3+1 nodes and the
// horizontal velocities and pressure at the n3 half-nodes (a staggered
// arrangement that needs no pressure boundary condition). No-slip enters w
// through its wall rows and the horizontal velocity through ghost reflection
// across the walls. Each mode's (4 n3 + 1)-square complex system is LU
// factored once; velocities come back at the nodes, the horizontal components
// by averaging the two adjacent half-node values.
class StokesOracle {
 public:
  StokesOracle(const Grid& g, double rayleigh);

  const Grid& grid() const { return *grid_; }

  // Same conventions as StokesSolver::apply_M (spectral in/out, wall planes
  // and the k = 0 column zero).
  void apply_M(const std::complex<double>* theta, std::complex<double>* u1,
               std::complex<double>* u2, std::complex<double>* u3) const;

 private:
  struct ModeLU {
    std::vector<std::complex<double>> lu;  // column-major (4n+1)^2
    std::vector<int> ipiv;
  };

  const Grid* grid_;
  double ra_;
  std::vector<ModeLU> factors_;
};

}  // namespace benard
