// norms.hpp: discrete L2 / H1 inner products and norms on spectral storage.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>

#include "benard/grid.hpp"

namespace benard {

// L2 inner product over T^2 x [0,1]: horizontal Parseval sum with the r2c
// storage weights, vertical trapezoid rule. Fields are real, so the result is
// Area * h * sum_m w_m sum_j wt_j Re(f ghat conj).
double l2_inner(const Grid& g, const std::complex<double>* f,
                const std::complex<double>* gg);
double l2_norm(const Grid& g, const std::complex<double>* f);

// H1 inner product: L2 part + horizontal gradients (spectral, a kappa^2
// factor) + the vertical Dirichlet form h * sum |(f_{j+1}-f_j)/h|^2 over the
// n3 intervals. For wall-vanishing fields the vertical part is the exact
// discrete counterpart of the tridiagonal diffusion stencil.
double h1_inner(const Grid& g, const std::complex<double>* f,
                const std::complex<double>* gg);
double h1_norm(const Grid& g, const std::complex<double>* f);

// Pointwise bounds on x3-major physical storage.
double max_abs_phys(const Grid& g, const double* phys);
double min_phys(const Grid& g, const double* phys);
double max_phys(const Grid& g, const double* phys);

}  // namespace benard
