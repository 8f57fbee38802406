// stepper.cpp: CNAB2 substeps with implicit linear coupling.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/stepper.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "benard/derivatives.hpp"

namespace benard {

namespace {

inline double max_abs(const RealArray& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

// Dense lower-triangular Cholesky solve (col-major L as left by dpotrf).
inline void dense_chol_solve(const double* l, int n, double* x) {
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= l[i + j * n] * x[j];
    x[i] = s / l[i + i * n];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= l[j + i * n] * x[j];
    x[i] = s / l[i + i * n];
  }
}

}  // namespace

CnBlocks::CnBlocks(const Grid& g, const StokesSolver& stokes, double dt,
                   double dtemp)
    : ni_(g.n3() - 1), dt_(dt), ops_(g.modes().size()) {
  const double invh2 = static_cast<double>(g.n3()) * g.n3();
  std::vector<double> aplus(static_cast<std::size_t>(ni_) * ni_);
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    ModeOp& op = ops_[mi];
    op.a_minus.assign(static_cast<std::size_t>(ni_) * ni_, 0.0);
    std::fill(aplus.begin(), aplus.end(), 0.0);

    // O = (L - kappa^2) + dtemp * M3 on interior nodes (row-major build).
    const std::vector<double>& m3 = stokes.coupling_block(mi);
    for (int r = 0; r < ni_; ++r) {
      for (int c = 0; c < ni_; ++c) {
        double o = m3.empty() ? 0.0
                              : dtemp * m3[static_cast<std::size_t>(r) * ni_ + c];
        if (r == c) o += -2.0 * invh2 - m.kappa2;
        if (c == r - 1 || c == r + 1) o += invh2;
        op.a_minus[static_cast<std::size_t>(r) * ni_ + c] = 0.5 * dt * o;
        // Column-major for the LAPACK factorization; O is symmetric so the
        // transpose question is moot, but keep the layouts honest.
        aplus[static_cast<std::size_t>(c) * ni_ + r] = -0.5 * dt * o;
      }
      op.a_minus[static_cast<std::size_t>(r) * ni_ + r] += 1.0;
      aplus[static_cast<std::size_t>(r) * ni_ + r] += 1.0;
    }
    const int info =
        LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', ni_, aplus.data(), ni_);
    if (info != 0) {
      throw SolverError(
          "stepper: implicit operator not positive definite at mode (" +
          std::to_string(m.k1) + "," + std::to_string(m.k2) +
          "); the configuration is too stiff for this step size");
    }
    op.chol = aplus;
  }
}

void CnBlocks::apply_minus(std::size_t mode, const double* xr,
                           const double* xi, double* yr, double* yi) const {
  const ModeOp& op = ops_[mode];
  const double* a = op.a_minus.data();
  for (int r = 0; r < ni_; ++r) {
    const double* row = a + static_cast<std::size_t>(r) * ni_;
    double sr = 0.0, si = 0.0;
    for (int c = 0; c < ni_; ++c) {
      sr += row[c] * xr[c];
      si += row[c] * xi[c];
    }
    yr[r] = sr;
    yi[r] = si;
  }
}

void CnBlocks::solve_plus(std::size_t mode, double* yr, double* yi) const {
  const ModeOp& op = ops_[mode];
  dense_chol_solve(op.chol.data(), ni_, yr);
  dense_chol_solve(op.chol.data(), ni_, yi);
}

AdvectionOp::AdvectionOp(const Grid& g)
    : grid_(&g),
      g1_(g.n_phys()),
      g2_(g.n_phys()),
      g3_(g.n_phys()),
      fa_(g.n_phys()),
      fb_(g.n_phys()),
      ha_(g.n_spec()),
      hb_(g.n_spec()),
      hc_(g.n_spec()) {}

void AdvectionOp::add_skew(Fft& fft, const double* u1, const double* u2,
                           const double* u3,
                           const std::complex<double>* f_hat,
                           const double* f_phys, double scale,
                           std::complex<double>* out_hat) {
  const Grid& g = *grid_;
  const std::size_t np = g.n_phys();
  const int nz = g.nz();

  // Horizontal gradient of f (spectral), vertical by centered differences.
  ddx_h(g, 1, f_hat, ha_.data());
  fft.backward(ha_.data(), g1_.data());
  ddx_h(g, 2, f_hat, hb_.data());
  fft.backward(hb_.data(), g2_.data());
  ddx3_phys_clamped(g, f_phys, g3_.data());

  // fa = u . grad f; fb = u3 f (the vertical flux).
  for (std::size_t p = 0; p < np; ++p) {
    fa_[p] = u1[p] * g1_[p] + u2[p] * g2_[p] + u3[p] * g3_[p];
    fb_[p] = u3[p] * f_phys[p];
  }
  // fa += D(u3 f); then fa holds u.grad f + vertical part of div(u f).
  ddx3_phys_clamped(g, fb_.data(), g3_.data());
  for (std::size_t p = 0; p < np; ++p) fa_[p] += g3_[p];
  fft.forward(fa_.data(), ha_.data());

  // Horizontal fluxes u_alpha f, differentiated spectrally.
  for (std::size_t p = 0; p < np; ++p) {
    fa_[p] = u1[p] * f_phys[p];
    fb_[p] = u2[p] * f_phys[p];
  }
  fft.forward(fa_.data(), hb_.data());
  fft.forward(fb_.data(), hc_.data());

  const double half = 0.5 * scale;
  for (const Mode& m : g.modes()) {
    const std::complex<double> ik1(0.0, static_cast<double>(m.k1));
    const std::complex<double> ik2(0.0, static_cast<double>(m.k2));
    const std::complex<double>* pa = ha_.data() + m.offset;
    const std::complex<double>* pb = hb_.data() + m.offset;
    const std::complex<double>* pc = hc_.data() + m.offset;
    std::complex<double>* po = out_hat + m.offset;
    for (int j = 1; j < nz - 1; ++j) {
      po[j] += half * (pa[j] + ik1 * pb[j] + ik2 * pc[j]);
    }
  }
}

ThermalStepper::ThermalStepper(const Grid& g, const StokesSolver& stokes,
                               const StepperOptions& opt)
    : grid_(&g),
      stokes_(&stokes),
      opt_(opt),
      fft_(g),
      cn_(g, stokes, 1.0 / opt.substeps, opt.t_bottom - opt.t_top),
      adv_(g),
      u1h_(g.n_spec()),
      u2h_(g.n_spec()),
      u3h_(g.n_spec()),
      ncur_(g.n_spec()),
      nprev_(g.n_spec()),
      phi_(g.n_spec()),
      u1p_(g.n_phys()),
      u2p_(g.n_phys()),
      u3p_(g.n_phys()),
      sp_(g.n_phys()),
      xr_(g.n3() - 1),
      xi_(g.n3() - 1),
      yr_(g.n3() - 1),
      yi_(g.n3() - 1) {
  if (opt.substeps < 2) throw ConfigError("stepper: need at least 2 substeps");
}

void ThermalStepper::begin_unit() { have_prev_ = false; }

void ThermalStepper::substep(std::complex<double>* s_hat, double t,
                             const Forcing* forcing) {
  const Grid& g = *grid_;
  const double dt = this->dt();
  const int nz = g.nz();
  const int ni = cn_.ni();

  // Velocity of the current state and physical renderings.
  stokes_->apply_M(s_hat, u1h_.data(), u2h_.data(), u3h_.data());
  fft_.backward(u1h_.data(), u1p_.data());
  fft_.backward(u2h_.data(), u2p_.data());
  fft_.backward(u3h_.data(), u3p_.data());
  fft_.backward(s_hat, sp_.data());

  const double c1 = max_abs(u1p_) * dt / g.dx1();
  const double c2 = max_abs(u2p_) * dt / g.dx2();
  const double c3 = max_abs(u3p_) * dt / g.h();
  last_cfl_ = std::max(c1, std::max(c2, c3));
  if (opt_.check_cfl && last_cfl_ > opt_.cfl_limit) {
    throw CflError("stepper: advective CFL " + std::to_string(last_cfl_) +
                   " exceeds limit " + std::to_string(opt_.cfl_limit) +
                   " at t = " + std::to_string(t));
  }

  // N(S) = -skew(u, S); Adams-Bashforth (Euler on the first substep).
  ncur_.fill_zero();
  adv_.add_skew(fft_, u1p_.data(), u2p_.data(), u3p_.data(), s_hat, sp_.data(),
                -1.0, ncur_.data());
  if (have_prev_) {
    for (const Mode& m : g.modes()) {
      const std::complex<double>* nc = ncur_.data() + m.offset;
      const std::complex<double>* np = nprev_.data() + m.offset;
      std::complex<double>* ph = phi_.data() + m.offset;
      for (int j = 1; j < nz - 1; ++j) ph[j] = 1.5 * nc[j] - 0.5 * np[j];
    }
  } else {
    std::memcpy(phi_.data(), ncur_.data(),
                g.n_spec() * sizeof(std::complex<double>));
  }
  if (forcing) (*forcing)(t + 0.5 * dt, phi_.data());

  // Per-mode implicit update: A_plus S_new = A_minus S_old + dt * phi.
  for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
    const Mode& m = g.modes()[mi];
    std::complex<double>* col = s_hat + m.offset;
    const std::complex<double>* ph = phi_.data() + m.offset;
    for (int j = 0; j < ni; ++j) {
      xr_[j] = col[j + 1].real();
      xi_[j] = col[j + 1].imag();
    }
    cn_.apply_minus(mi, xr_.data(), xi_.data(), yr_.data(), yi_.data());
    for (int j = 0; j < ni; ++j) {
      yr_[j] += dt * ph[j + 1].real();
      yi_[j] += dt * ph[j + 1].imag();
    }
    cn_.solve_plus(mi, yr_.data(), yi_.data());
    for (int j = 0; j < ni; ++j) col[j + 1] = {yr_[j], yi_[j]};
    col[0] = 0.0;
    col[nz - 1] = 0.0;
  }

  ncur_.swap(nprev_);
  have_prev_ = true;
}

void ThermalStepper::advance_unit(std::complex<double>* s_hat, double t0,
                                  const Forcing* forcing,
                                  const Observer* observer) {
  begin_unit();
  if (observer) (*observer)(0, t0, s_hat);
  const double dt = this->dt();
  for (int n = 0; n < opt_.substeps; ++n) {
    substep(s_hat, t0 + n * dt, forcing);
    if (observer) (*observer)(n + 1, t0 + (n + 1) * dt, s_hat);
  }
}

}  // namespace benard
