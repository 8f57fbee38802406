// derivatives.cpp: derivative stencils.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/derivatives.hpp"

#include <cstring>

namespace benard {

void ddx_h(const Grid& g, int alpha, const std::complex<double>* in,
           std::complex<double>* out) {
  const int nz = g.nz();
  std::memset(static_cast<void*>(out), 0,
              g.n_spec() * sizeof(std::complex<double>));
  for (const Mode& m : g.modes()) {
    const double k = alpha == 1 ? m.k1 : m.k2;
    const std::complex<double> ik(0.0, k);
    const std::complex<double>* src = in + m.offset;
    std::complex<double>* dst = out + m.offset;
    for (int j = 0; j < nz; ++j) dst[j] = ik * src[j];
  }
}

void ddx3_clamped(const Grid& g, const std::complex<double>* in,
                  std::complex<double>* out) {
  const int nz = g.nz();
  const double inv2h = 0.5 * g.n3();
  std::memset(static_cast<void*>(out), 0,
              g.n_spec() * sizeof(std::complex<double>));
  for (const Mode& m : g.modes()) {
    const std::complex<double>* src = in + m.offset;
    std::complex<double>* dst = out + m.offset;
    for (int j = 1; j < nz - 1; ++j) dst[j] = (src[j + 1] - src[j - 1]) * inv2h;
  }
}

void ddx3_phys_clamped(const Grid& g, const double* in, double* out) {
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  const double inv2h = 0.5 * g.n3();
  std::memset(out, 0, plane * sizeof(double));
  std::memset(out + static_cast<std::size_t>(g.n3()) * plane, 0,
              plane * sizeof(double));
  for (int j = 1; j < g.n3(); ++j) {
    const double* up = in + (j + 1) * plane;
    const double* dn = in + (j - 1) * plane;
    double* dst = out + j * plane;
    for (std::size_t p = 0; p < plane; ++p) dst[p] = (up[p] - dn[p]) * inv2h;
  }
}

void d2dx3_interior(const Grid& g, const std::complex<double>* in,
                    std::complex<double>* out) {
  const int nz = g.nz();
  const double invh2 = static_cast<double>(g.n3()) * g.n3();
  std::memset(static_cast<void*>(out), 0,
              g.n_spec() * sizeof(std::complex<double>));
  for (const Mode& m : g.modes()) {
    const std::complex<double>* src = in + m.offset;
    std::complex<double>* dst = out + m.offset;
    for (int j = 1; j < nz - 1; ++j) {
      dst[j] = (src[j - 1] - 2.0 * src[j] + src[j + 1]) * invh2;
    }
  }
}

}  // namespace benard
