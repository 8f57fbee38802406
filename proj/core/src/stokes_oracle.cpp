// stokes_oracle.cpp: dense staggered-pressure Stokes reference solver.
// Part of benard-mix (MIT license; see LICENSE).
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include "benard/stokes_oracle.hpp"

#include <complex>

#include <lapacke.h>

#include <cstring>
#include <string>

namespace benard {

StokesOracle::StokesOracle(const Grid& g, double rayleigh)
    : grid_(&g), ra_(rayleigh) {
  const int n = g.n3();
  const int nun = 4 * n + 1;  // w: n+1 nodes; sigma1, sigma2, p: n half-nodes
  const double h = g.h();
  const double invh = 1.0 / h;
  const double invh2 = invh * invh;
  factors_.resize(g.modes().size());

  // Unknown layout: x = [w_0..w_n | s1_0..s1_{n-1} | s2_0.. | p_0..p_{n-1}].
  const auto W = [](int j) { return j; };
  const auto S1 = [n](int m) { return n + 1 + m; };
  const auto S2 = [n](int m) { return 2 * n + 1 + m; };
  const auto P = [n](int m) { return 3 * n + 1 + m; };

  std::vector<std::complex<double>> A;
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& md = g.modes()[mi];
    if (md.kappa2 == 0.0) continue;
    A.assign(static_cast<std::size_t>(nun) * nun, 0.0);
    // Column-major element accessor for LAPACK.
    const auto at = [&](int r, int c) -> std::complex<double>& {
      return A[static_cast<std::size_t>(c) * nun + r];
    };
    const std::complex<double> ik1(0.0, static_cast<double>(md.k1));
    const std::complex<double> ik2(0.0, static_cast<double>(md.k2));
    int row = 0;

    // Wall rows for w.
    at(row, W(0)) = 1.0;
    ++row;
    // Vertical momentum at interior nodes:
    //   -[(w_{j-1} - 2 w_j + w_{j+1})/h^2 - kappa^2 w_j] + (p_j - p_{j-1})/h
    //     = Ra theta_j.
    for (int j = 1; j < n; ++j) {
      at(row, W(j - 1)) += -invh2;
      at(row, W(j)) += 2.0 * invh2 + md.kappa2;
      at(row, W(j + 1)) += -invh2;
      at(row, P(j)) += invh;
      at(row, P(j - 1)) += -invh;
      ++row;
    }
    at(row, W(n)) = 1.0;
    ++row;

    // Divergence at half-nodes: i k . sigma_m + (w_{m+1} - w_m)/h = 0.
    for (int m = 0; m < n; ++m) {
      at(row, S1(m)) += ik1;
      at(row, S2(m)) += ik2;
      at(row, W(m + 1)) += invh;
      at(row, W(m)) += -invh;
      ++row;
    }

    // Horizontal momentum at half-nodes; the wall rows use the ghost
    // reflection sigma_{-1} = -sigma_0 (no-slip midway between the ghost and
    // the first half-node), giving (sigma_1 - 3 sigma_0)/h^2.
    for (int alpha = 0; alpha < 2; ++alpha) {
      const auto S = [&](int m) { return alpha == 0 ? S1(m) : S2(m); };
      const std::complex<double> ika = alpha == 0 ? ik1 : ik2;
      for (int m = 0; m < n; ++m) {
        double diag = -2.0;
        if (m == 0 || m == n - 1) diag = -3.0;
        at(row, S(m)) += -(diag * invh2) + md.kappa2;
        if (m > 0) at(row, S(m - 1)) += -invh2;
        if (m < n - 1) at(row, S(m + 1)) += -invh2;
        at(row, P(m)) += ika;
        ++row;
      }
    }

    ModeLU& f = factors_[mi];
    f.lu = A;
    f.ipiv.assign(nun, 0);
    const int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, nun, nun, f.lu.data(),
                                    nun, f.ipiv.data());
    if (info != 0) {
      throw SolverError("stokes oracle: LU failed at mode (" +
                        std::to_string(md.k1) + "," + std::to_string(md.k2) +
                        "), info " + std::to_string(info));
    }
  }
}

void StokesOracle::apply_M(const std::complex<double>* theta,
                           std::complex<double>* u1, std::complex<double>* u2,
                           std::complex<double>* u3) const {
  const Grid& g = *grid_;
  const int n = g.n3();
  const int nun = 4 * n + 1;
  const std::size_t nbytes = g.n_spec() * sizeof(std::complex<double>);
  std::memset(static_cast<void*>(u1), 0, nbytes);
  std::memset(static_cast<void*>(u2), 0, nbytes);
  std::memset(static_cast<void*>(u3), 0, nbytes);

  std::vector<std::complex<double>> b(nun);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& md = g.modes()[mi];
    if (md.kappa2 == 0.0) continue;
    const std::complex<double>* th = theta + md.offset;
    std::fill(b.begin(), b.end(), 0.0);
    // Rows follow the assembly order above: the vertical-momentum rows are
    // 1..n-1 and carry the buoyancy Ra theta_j; every other row is zero.
    for (int j = 1; j < n; ++j) b[j] = ra_ * th[j];

    const ModeLU& f = factors_[mi];
    const int info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', nun, 1,
                                    f.lu.data(), nun, f.ipiv.data(), b.data(),
                                    nun);
    if (info != 0) {
      throw SolverError("stokes oracle: solve failed, info " +
                        std::to_string(info));
    }

    std::complex<double>* c1 = u1 + md.offset;
    std::complex<double>* c2 = u2 + md.offset;
    std::complex<double>* c3 = u3 + md.offset;
    for (int j = 0; j <= n; ++j) c3[j] = b[j];
    // Horizontal velocity at interior nodes: mean of the adjacent half-nodes.
    for (int j = 1; j < n; ++j) {
      c1[j] = 0.5 * (b[n + 1 + (j - 1)] + b[n + 1 + j]);
      c2[j] = 0.5 * (b[2 * n + 1 + (j - 1)] + b[2 * n + 1 + j]);
    }
  }
}

}  // namespace benard
