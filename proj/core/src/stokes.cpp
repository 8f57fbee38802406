// stokes.cpp: banded quartic factorizations, velocity reconstruction, adjoint.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/stokes.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstring>
#include <string>

namespace benard {

namespace {

// Solve B x = b in place for a banded SPD Cholesky factor (lower, kd = 2,
// ldab = 3, column-major as produced by dpbtrf), on a complex vector stored
// as separate real/imag strides of 1 (std::complex layout).
inline void chol_solve(const double* ab, int n, std::complex<double>* x) {
  for (int j = 0; j < n; ++j) {
    double re = x[j].real(), im = x[j].imag();
    if (j >= 1) {
      const double l = ab[1 + 3 * (j - 1)];
      re -= l * x[j - 1].real();
      im -= l * x[j - 1].imag();
    }
    if (j >= 2) {
      const double l = ab[2 + 3 * (j - 2)];
      re -= l * x[j - 2].real();
      im -= l * x[j - 2].imag();
    }
    const double d = ab[3 * j];
    x[j] = {re / d, im / d};
  }
  for (int j = n - 1; j >= 0; --j) {
    double re = x[j].real(), im = x[j].imag();
    if (j + 1 < n) {
      const double l = ab[1 + 3 * j];
      re -= l * x[j + 1].real();
      im -= l * x[j + 1].imag();
    }
    if (j + 2 < n) {
      const double l = ab[2 + 3 * j];
      re -= l * x[j + 2].real();
      im -= l * x[j + 2].imag();
    }
    const double d = ab[3 * j];
    x[j] = {re / d, im / d};
  }
}

inline void chol_solve_real(const double* ab, int n, double* x) {
  for (int j = 0; j < n; ++j) {
    double s = x[j];
    if (j >= 1) s -= ab[1 + 3 * (j - 1)] * x[j - 1];
    if (j >= 2) s -= ab[2 + 3 * (j - 2)] * x[j - 2];
    x[j] = s / ab[3 * j];
  }
  for (int j = n - 1; j >= 0; --j) {
    double s = x[j];
    if (j + 1 < n) s -= ab[1 + 3 * j] * x[j + 1];
    if (j + 2 < n) s -= ab[2 + 3 * j] * x[j + 2];
    x[j] = s / ab[3 * j];
  }
}

}  // namespace

StokesSolver::StokesSolver(const Grid& g, double rayleigh)
    : grid_(&g), ra_(rayleigh) {
  const int n3 = g.n3();
  const int ni = n3 - 1;
  const double h = g.h();
  const double h2 = h * h;
  const double h4 = h2 * h2;
  factors_.resize(g.modes().size());

  std::vector<double> ab(3 * ni);
  std::vector<double> rhs(ni);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    ModeFactor& f = factors_[mi];
    if (m.kappa2 == 0.0) continue;  // no flow at k = 0

    // Lower band of B = D4 - 2 kappa^2 L + kappa^4 I on interior nodes.
    // D4 rows: [7 -4 1]/h^4 next to a wall (ghost fold), else [1 -4 6 -4 1].
    // L rows: [1 -2 1]/h^2 with Dirichlet walls.
    const double k2 = m.kappa2;
    for (int j = 0; j < ni; ++j) {
      const bool wall_adj = (j == 0 || j == ni - 1);
      const double d4_diag = (wall_adj ? 7.0 : 6.0) / h4;
      ab[3 * j] = d4_diag - 2.0 * k2 * (-2.0 / h2) + k2 * k2;
      ab[1 + 3 * j] = -4.0 / h4 - 2.0 * k2 * (1.0 / h2);  // sub-diagonal
      ab[2 + 3 * j] = 1.0 / h4;                           // sub-sub-diagonal
    }
    f.chol = ab;
    const int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'L', ni, 2,
                                    f.chol.data(), 3);
    if (info != 0) {
      throw SolverError("stokes: Cholesky failed at mode (" +
                        std::to_string(m.k1) + "," + std::to_string(m.k2) +
                        "), info " + std::to_string(info));
    }

    // Dense coupling block Ra kappa^2 B^{-1} (columns via the factorization).
    f.coupling.assign(static_cast<std::size_t>(ni) * ni, 0.0);
    for (int c = 0; c < ni; ++c) {
      std::fill(rhs.begin(), rhs.end(), 0.0);
      rhs[c] = ra_ * k2;
      chol_solve_real(f.chol.data(), ni, rhs.data());
      for (int r = 0; r < ni; ++r) {
        f.coupling[static_cast<std::size_t>(r) * ni + c] = rhs[r];
      }
    }
  }
}

void StokesSolver::quartic_solve(std::size_t mode_index,
                                 const std::complex<double>* rhs_interior,
                                 std::complex<double>* v_interior) const {
  const ModeFactor& f = factors_[mode_index];
  const int ni = interior();
  if (f.chol.empty()) {
    for (int j = 0; j < ni; ++j) v_interior[j] = 0.0;
    return;
  }
  if (v_interior != rhs_interior) {
    std::memcpy(v_interior, rhs_interior,
                static_cast<std::size_t>(ni) * sizeof(std::complex<double>));
  }
  chol_solve(f.chol.data(), ni, v_interior);
}

void StokesSolver::apply_M(const std::complex<double>* theta,
                           std::complex<double>* u1, std::complex<double>* u2,
                           std::complex<double>* u3) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  const std::size_t nbytes = g.n_spec() * sizeof(std::complex<double>);
  std::memset(static_cast<void*>(u1), 0, nbytes);
  std::memset(static_cast<void*>(u2), 0, nbytes);
  std::memset(static_cast<void*>(u3), 0, nbytes);

  const double inv2h = 0.5 * g.n3();
  std::vector<std::complex<double>> w(nz, 0.0);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    if (m.kappa2 == 0.0) continue;
    const std::complex<double>* th = theta + m.offset;

    // Interior solve (D^2 - kappa^2)^2 w = Ra kappa^2 theta; walls stay zero.
    for (int j = 1; j < nz - 1; ++j) w[j] = ra_ * m.kappa2 * th[j];
    w[0] = w[nz - 1] = 0.0;
    chol_solve(factors_[mi].chol.data(), nz - 2, w.data() + 1);

    std::complex<double>* c3 = u3 + m.offset;
    for (int j = 1; j < nz - 1; ++j) c3[j] = w[j];

    // u_h = (i k / kappa^2) D w, clamped difference (wall rows zero).
    const std::complex<double> f1(0.0, m.k1 / m.kappa2);
    const std::complex<double> f2(0.0, m.k2 / m.kappa2);
    std::complex<double>* c1 = u1 + m.offset;
    std::complex<double>* c2 = u2 + m.offset;
    for (int j = 1; j < nz - 1; ++j) {
      const std::complex<double> dw = (w[j + 1] - w[j - 1]) * inv2h;
      c1[j] = f1 * dw;
      c2[j] = f2 * dw;
    }
  }
}

void StokesSolver::apply_M3(const std::complex<double>* theta,
                            std::complex<double>* u3) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  std::memset(static_cast<void*>(u3), 0,
              g.n_spec() * sizeof(std::complex<double>));
  std::vector<std::complex<double>> w(nz, 0.0);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    if (m.kappa2 == 0.0) continue;
    const std::complex<double>* th = theta + m.offset;
    for (int j = 1; j < nz - 1; ++j) w[j] = ra_ * m.kappa2 * th[j];
    chol_solve(factors_[mi].chol.data(), nz - 2, w.data() + 1);
    std::complex<double>* c3 = u3 + m.offset;
    for (int j = 1; j < nz - 1; ++j) c3[j] = w[j];
  }
}

void StokesSolver::apply_M_star(const std::complex<double>* f1,
                                const std::complex<double>* f2,
                                const std::complex<double>* f3,
                                std::complex<double>* out) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  std::memset(static_cast<void*>(out), 0,
              g.n_spec() * sizeof(std::complex<double>));
  const double inv2h = 0.5 * g.n3();
  std::vector<std::complex<double>> rhs(nz, 0.0);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    if (m.kappa2 == 0.0) continue;
    const std::complex<double>* a = f1 + m.offset;
    const std::complex<double>* b = f2 + m.offset;
    const std::complex<double>* c = f3 + m.offset;
    const std::complex<double> ik1(0.0, static_cast<double>(m.k1));
    const std::complex<double> ik2(0.0, static_cast<double>(m.k2));

    // rhs = Ra [ i k . D(f_h with walls zeroed) + kappa^2 f3 ] at interior
    // nodes. Zeroing the wall values of f_h is the transpose of clamping.
    for (int j = 1; j < nz - 1; ++j) {
      const std::complex<double> am = (j - 1 == 0) ? 0.0 : a[j - 1];
      const std::complex<double> ap = (j + 1 == nz - 1) ? 0.0 : a[j + 1];
      const std::complex<double> bm = (j - 1 == 0) ? 0.0 : b[j - 1];
      const std::complex<double> bp = (j + 1 == nz - 1) ? 0.0 : b[j + 1];
      const std::complex<double> da = (ap - am) * inv2h;
      const std::complex<double> db = (bp - bm) * inv2h;
      rhs[j] = ra_ * (ik1 * da + ik2 * db + m.kappa2 * c[j]);
    }
    chol_solve(factors_[mi].chol.data(), nz - 2, rhs.data() + 1);
    std::complex<double>* o = out + m.offset;
    for (int j = 1; j < nz - 1; ++j) o[j] = rhs[j];
  }
}

void divergence(const Grid& g, const std::complex<double>* u1,
                const std::complex<double>* u2, const std::complex<double>* u3,
                std::complex<double>* div) {
  const int nz = g.nz();
  const double inv2h = 0.5 * g.n3();
  std::memset(static_cast<void*>(div), 0,
              g.n_spec() * sizeof(std::complex<double>));
  for (const Mode& m : g.modes()) {
    const std::complex<double> ik1(0.0, static_cast<double>(m.k1));
    const std::complex<double> ik2(0.0, static_cast<double>(m.k2));
    const std::complex<double>* a = u1 + m.offset;
    const std::complex<double>* b = u2 + m.offset;
    const std::complex<double>* c = u3 + m.offset;
    std::complex<double>* d = div + m.offset;
    for (int j = 1; j < nz - 1; ++j) {
      d[j] = ik1 * a[j] + ik2 * b[j] + (c[j + 1] - c[j - 1]) * inv2h;
    }
    d[0] = ik1 * a[0] + ik2 * b[0];
    d[nz - 1] = ik1 * a[nz - 1] + ik2 * b[nz - 1];
  }
}

}  // namespace benard
