// derivatives.hpp: spectral horizontal derivatives and vertical finite
// differences on mode-major spectral (or x3-major physical) storage.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>

#include "benard/grid.hpp"

namespace benard {

// out = d(in)/dx_alpha for alpha in {1, 2}: multiply mode k by i*k_alpha.
// Only retained modes are written; the rest of out is zeroed.
void ddx_h(const Grid& g, int alpha, const std::complex<double>* in,
           std::complex<double>* out);

// Centered vertical difference (f_{j+1} - f_{j-1}) / (2h) at interior nodes,
// with both wall rows set to zero. This clamped convention is the one the
// velocity reconstruction uses, and its transpose (with wall values of the
// input zeroed) is what the adjoint solver applies.
void ddx3_clamped(const Grid& g, const std::complex<double>* in,
                  std::complex<double>* out);

// Same stencil on physical x3-major storage (wall planes zeroed).
void ddx3_phys_clamped(const Grid& g, const double* in, double* out);

// Second vertical difference (f_{j-1} - 2 f_j + f_{j+1}) / h^2 at interior
// nodes, wall rows zero. Used by diagnostics and the forcing-norm Gram.
void d2dx3_interior(const Grid& g, const std::complex<double>* in,
                    std::complex<double>* out);

}  // namespace benard
