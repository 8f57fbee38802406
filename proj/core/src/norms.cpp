// norms.cpp: inner products and pointwise bounds.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/norms.hpp"

#include <algorithm>
#include <cmath>

namespace benard {

double l2_inner(const Grid& g, const std::complex<double>* f,
                const std::complex<double>* gg) {
  const int nz = g.nz();
  double acc = 0.0;
  for (const Mode& m : g.modes()) {
    const std::complex<double>* a = f + m.offset;
    const std::complex<double>* b = gg + m.offset;
    double col = 0.0;
    // Trapezoid: full weight inside, half weight at the walls.
    for (int j = 1; j < nz - 1; ++j) {
      col += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    }
    col += 0.5 * (a[0].real() * b[0].real() + a[0].imag() * b[0].imag());
    col += 0.5 * (a[nz - 1].real() * b[nz - 1].real() +
                  a[nz - 1].imag() * b[nz - 1].imag());
    acc += m.weight * col;
  }
  return Grid::kArea * g.h() * acc;
}

double l2_norm(const Grid& g, const std::complex<double>* f) {
  return std::sqrt(std::max(0.0, l2_inner(g, f, f)));
}

double h1_inner(const Grid& g, const std::complex<double>* f,
                const std::complex<double>* gg) {
  const int nz = g.nz();
  const double invh = g.n3();
  double acc = 0.0;
  for (const Mode& m : g.modes()) {
    const std::complex<double>* a = f + m.offset;
    const std::complex<double>* b = gg + m.offset;
    double l2col = 0.0;
    for (int j = 1; j < nz - 1; ++j) {
      l2col += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    }
    l2col += 0.5 * (a[0].real() * b[0].real() + a[0].imag() * b[0].imag());
    l2col += 0.5 * (a[nz - 1].real() * b[nz - 1].real() +
                    a[nz - 1].imag() * b[nz - 1].imag());
    double dcol = 0.0;
    for (int j = 0; j < nz - 1; ++j) {
      const double dr = (a[j + 1].real() - a[j].real()) * invh;
      const double di = (a[j + 1].imag() - a[j].imag()) * invh;
      const double er = (b[j + 1].real() - b[j].real()) * invh;
      const double ei = (b[j + 1].imag() - b[j].imag()) * invh;
      dcol += dr * er + di * ei;
    }
    acc += m.weight * ((1.0 + m.kappa2) * l2col + dcol);
  }
  return Grid::kArea * g.h() * acc;
}

double h1_norm(const Grid& g, const std::complex<double>* f) {
  return std::sqrt(std::max(0.0, h1_inner(g, f, f)));
}

double max_abs_phys(const Grid& g, const double* phys) {
  double m = 0.0;
  const std::size_t n = g.n_phys();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(phys[i]));
  return m;
}

double min_phys(const Grid& g, const double* phys) {
  double m = phys[0];
  const std::size_t n = g.n_phys();
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, phys[i]);
  return m;
}

double max_phys(const Grid& g, const double* phys) {
  double m = phys[0];
  const std::size_t n = g.n_phys();
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, phys[i]);
  return m;
}

}  // namespace benard
