// tangent.cpp: linearized and dual sweeps, duality check, density diagnostic.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/tangent.hpp"

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "benard/derivatives.hpp"
#include "benard/errors.hpp"
#include "benard/norms.hpp"
#include "benard/observables.hpp"
#include "benard/rng.hpp"

namespace benard {

TangentSolver::TangentSolver(const Grid& g, const StokesSolver& stokes,
                             const StepperOptions& opt)
    : grid_(&g),
      stokes_(&stokes),
      opt_(opt),
      fft_(g),
      cn_(g, stokes, 1.0 / opt.substeps, opt.t_bottom - opt.t_top),
      adv_(g),
      frame_(g.n_spec()),
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
      tp_(g.n_phys()),
      xr_(cn_.ni()),
      xi_(cn_.ni()),
      yr_(cn_.ni()),
      yi_(cn_.ni()) {
  if (opt.substeps < 2) {
    throw ConfigError("tangent: at least two substeps per unit are required");
  }
}

void TangentSolver::advance_unit(const FrozenTrajectory& traj, double t0,
                                 std::complex<double>* theta_hat,
                                 const Forcing* zeta) {
  const Grid& g = *grid_;
  if (traj.substeps() != opt_.substeps) {
    throw ConfigError("tangent: trajectory resolution does not match");
  }
  const double dt = this->dt();
  const int nz = g.nz();
  const int ni = cn_.ni();
  bool have_prev = false;

  for (int n = 0; n < opt_.substeps; ++n) {
    traj.get_frame(n, frame_.data());

    // Trajectory velocity u_S and physical S.
    stokes_->apply_M(frame_.data(), u1h_.data(), u2h_.data(), u3h_.data());
    fft_.backward(u1h_.data(), u1p_.data());
    fft_.backward(u2h_.data(), u2p_.data());
    fft_.backward(u3h_.data(), u3p_.data());
    fft_.backward(frame_.data(), sp_.data());

    // N'(S)[theta] = -skew(u_S, theta) - skew(M(theta), S).
    ncur_.fill_zero();
    fft_.backward(theta_hat, tp_.data());
    adv_.add_skew(fft_, u1p_.data(), u2p_.data(), u3p_.data(), theta_hat,
                  tp_.data(), -1.0, ncur_.data());
    stokes_->apply_M(theta_hat, u1h_.data(), u2h_.data(), u3h_.data());
    fft_.backward(u1h_.data(), u1p_.data());
    fft_.backward(u2h_.data(), u2p_.data());
    fft_.backward(u3h_.data(), u3p_.data());
    adv_.add_skew(fft_, u1p_.data(), u2p_.data(), u3p_.data(), frame_.data(),
                  sp_.data(), -1.0, ncur_.data());

    if (have_prev) {
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
    if (zeta) (*zeta)(t0 + (n + 0.5) * dt, phi_.data());

    for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
      const Mode& m = g.modes()[mi];
      std::complex<double>* col = theta_hat + m.offset;
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
    have_prev = true;
  }
}

DualSolver::DualSolver(const Grid& g, const StokesSolver& stokes,
                       const StepperOptions& opt)
    : grid_(&g),
      stokes_(&stokes),
      opt_(opt),
      fft_(g),
      cn_(g, stokes, 1.0 / opt.substeps, opt.t_bottom - opt.t_top),
      adv_(g),
      frame_(g.n_spec()),
      u1h_(g.n_spec()),
      u2h_(g.n_spec()),
      u3h_(g.n_spec()),
      g1h_(g.n_spec()),
      g2h_(g.n_spec()),
      g3h_(g.n_spec()),
      mstar_(g.n_spec()),
      wcur_(g.n_spec()),
      wprev_(g.n_spec()),
      phi_(g.n_spec()),
      u1p_(g.n_phys()),
      u2p_(g.n_phys()),
      u3p_(g.n_phys()),
      sp_(g.n_phys()),
      pp_(g.n_phys()),
      d1s_(g.n_phys()),
      d2s_(g.n_phys()),
      d3s_(g.n_phys()),
      d1p_(g.n_phys()),
      d2p_(g.n_phys()),
      d3p_(g.n_phys()),
      xr_(cn_.ni()),
      xi_(cn_.ni()),
      yr_(cn_.ni()),
      yi_(cn_.ni()) {
  if (opt.substeps < 2) {
    throw ConfigError("dual: at least two substeps per unit are required");
  }
}

void DualSolver::reverse_unit(const FrozenTrajectory& traj, double t0,
                              std::complex<double>* psi_hat,
                              const Observer* observer) {
  const Grid& g = *grid_;
  if (traj.substeps() != opt_.substeps) {
    throw ConfigError("dual: trajectory resolution does not match");
  }
  const double dt = this->dt();
  const int nz = g.nz();
  const int ni = cn_.ni();
  const int nsub = opt_.substeps;
  bool have_prev = false;

  if (observer) (*observer)(0, t0 + 1.0, psi_hat);
  for (int m = 0; m < nsub; ++m) {
    // Trajectory frame at the sweep's current time t = t0 + (nsub - m) dt.
    traj.get_frame(nsub - m, frame_.data());

    stokes_->apply_M(frame_.data(), u1h_.data(), u2h_.data(), u3h_.data());
    fft_.backward(u1h_.data(), u1p_.data());
    fft_.backward(u2h_.data(), u2p_.data());
    fft_.backward(u3h_.data(), u3p_.data());
    fft_.backward(frame_.data(), sp_.data());
    fft_.backward(psi_hat, pp_.data());

    // W = +skew(u_S, psi) - M*(G) with G_a = (psi d_a S - S d_a psi) / 2.
    wcur_.fill_zero();
    adv_.add_skew(fft_, u1p_.data(), u2p_.data(), u3p_.data(), psi_hat,
                  pp_.data(), 1.0, wcur_.data());

    ddx_h(g, 1, frame_.data(), g1h_.data());
    fft_.backward(g1h_.data(), d1s_.data());
    ddx_h(g, 2, frame_.data(), g2h_.data());
    fft_.backward(g2h_.data(), d2s_.data());
    ddx3_phys_clamped(g, sp_.data(), d3s_.data());
    ddx_h(g, 1, psi_hat, g1h_.data());
    fft_.backward(g1h_.data(), d1p_.data());
    ddx_h(g, 2, psi_hat, g2h_.data());
    fft_.backward(g2h_.data(), d2p_.data());
    ddx3_phys_clamped(g, pp_.data(), d3p_.data());
    for (std::size_t i = 0; i < g.n_phys(); ++i) {
      d1s_[i] = 0.5 * (pp_[i] * d1s_[i] - sp_[i] * d1p_[i]);
      d2s_[i] = 0.5 * (pp_[i] * d2s_[i] - sp_[i] * d2p_[i]);
      d3s_[i] = 0.5 * (pp_[i] * d3s_[i] - sp_[i] * d3p_[i]);
    }
    fft_.forward(d1s_.data(), g1h_.data());
    fft_.forward(d2s_.data(), g2h_.data());
    fft_.forward(d3s_.data(), g3h_.data());
    stokes_->apply_M_star(g1h_.data(), g2h_.data(), g3h_.data(),
                          mstar_.data());
    for (const Mode& md : g.modes()) {
      const std::complex<double>* ms = mstar_.data() + md.offset;
      std::complex<double>* wc = wcur_.data() + md.offset;
      for (int j = 1; j < nz - 1; ++j) wc[j] -= ms[j];
    }

    if (have_prev) {
      for (const Mode& md : g.modes()) {
        const std::complex<double>* nc = wcur_.data() + md.offset;
        const std::complex<double>* np = wprev_.data() + md.offset;
        std::complex<double>* ph = phi_.data() + md.offset;
        for (int j = 1; j < nz - 1; ++j) ph[j] = 1.5 * nc[j] - 0.5 * np[j];
      }
    } else {
      std::memcpy(phi_.data(), wcur_.data(),
                  g.n_spec() * sizeof(std::complex<double>));
    }

    for (std::size_t mi = 0; mi < g.modes().size(); ++mi) {
      const Mode& md = g.modes()[mi];
      std::complex<double>* col = psi_hat + md.offset;
      const std::complex<double>* ph = phi_.data() + md.offset;
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

    wcur_.swap(wprev_);
    have_prev = true;
    if (observer) (*observer)(m + 1, t0 + 1.0 - (m + 1) * dt, psi_hat);
  }
}

DualityResult duality_check(const Grid& grid, const StokesSolver& stokes,
                            const StepperOptions& opt,
                            const FrozenTrajectory& traj,
                            const NoiseBasis& basis, std::uint64_t seed,
                            std::uint64_t pair) {
  // Admissible forcing realization and normalized endpoint datum, both drawn
  // deterministically from (seed, pair).
  const int m = basis.size();
  std::vector<double> coeffs(m);
  DrawStream zdraw(seed, stream::kDualityPair, pair, 0);
  for (int j = 0; j < m; ++j) {
    coeffs[j] = basis.options().amplitude * basis.b(j) * zdraw.next_bounded();
  }
  const std::vector<double> weights = basis.collapse(coeffs);
  const Forcing zeta = [&](double t, std::complex<double>* out) {
    basis.add_raw_eval(weights, t - std::floor(t), out);
  };

  ScalarField psi(grid);
  DrawStream pdraw(seed, stream::kDualityPair, pair, 1);
  add_low_mode_field(grid, pdraw, 2, 3, psi.spec());
  const double pnorm = l2_norm(grid, psi.spec());
  if (pnorm <= 0.0) throw SolverError("duality: endpoint datum degenerated");
  psi.scale(1.0 / pnorm);
  ComplexArray psi1(grid.n_spec());
  std::memcpy(psi1.data(), psi.spec(),
              grid.n_spec() * sizeof(std::complex<double>));

  // Forward tangent from zero, driven by zeta.
  TangentSolver tangent(grid, stokes, opt);
  ScalarField theta(grid);
  theta.zero();
  tangent.advance_unit(traj, 0.0, theta.spec(), &zeta);

  DualityResult result;
  result.lhs = l2_inner(grid, theta.spec(), psi1.data());

  // Backward sweep accumulating the forcing quadrature
  //   sum_n dt <zeta(t_n + dt/2), (psi(t_n) + psi(t_{n+1})) / 2>.
  DualSolver dual(grid, stokes, opt);
  const double dt = dual.dt();
  ComplexArray prev(grid.n_spec());
  ComplexArray zmid(grid.n_spec());
  double quad = 0.0;
  double scale = 0.0;
  const Observer observer = [&](int mstep, double t,
                                const std::complex<double>* cur) {
    if (mstep > 0) {
      // The sweep moved from time t + dt to t; pair the midpoint forcing with
      // the average of the bracketing states.
      zmid.fill_zero();
      const double tmid = t + 0.5 * dt;
      basis.add_raw_eval(weights, tmid - std::floor(tmid), zmid.data());
      for (std::size_t i = 0; i < grid.n_spec(); ++i) {
        prev[i] = 0.5 * (prev[i] + cur[i]);
      }
      quad += dt * l2_inner(grid, zmid.data(), prev.data());
      scale += dt * l2_norm(grid, zmid.data()) * l2_norm(grid, prev.data());
    }
    std::memcpy(prev.data(), cur, grid.n_spec() * sizeof(std::complex<double>));
  };
  dual.reverse_unit(traj, 0.0, psi.spec(), &observer);

  result.rhs = quad;
  // Normalize by the accumulated Cauchy-Schwarz bound of the pairing rather
  // than |quad| itself: the signed quadrature can cancel to near zero for
  // particular (zeta, psi) draws, which would inflate the relative residual
  // without any loss of accuracy.
  result.normalizer = scale;
  result.residual = result.normalizer > 0.0
                        ? std::abs(result.lhs - result.rhs) / result.normalizer
                        : 0.0;
  return result;
}

DensityReport density_diagnostic(const Grid& grid, const StokesSolver& stokes,
                                 const StepperOptions& opt,
                                 const FrozenTrajectory& traj,
                                 const NoiseBasis& basis, int d) {
  const int m = basis.size();
  DensityReport report;
  report.d = d;
  report.m = m;

  // Target fields: the d lowest product modes trig(k . x_h) sin(pi nu x3),
  // ordered by kappa^2 + pi^2 nu^2 with a deterministic tie-break.
  struct Target {
    double lambda;
    double kappa2;
    int nu, k1, k2, trig;
  };
  std::vector<Target> pool;
  const int kh = std::min(4, std::min(grid.kmax1(), grid.kmax2()));
  const int numax = std::min(6, grid.n3() - 1);
  for (int k2 = 0; k2 <= kh; ++k2) {
    for (int k1 = (k2 == 0 ? 0 : -kh); k1 <= kh; ++k1) {
      const double kappa2 =
          static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const int trigs = (k1 == 0 && k2 == 0) ? 1 : 2;
      for (int trig = 0; trig < trigs; ++trig) {
        for (int nu = 1; nu <= numax; ++nu) {
          pool.push_back(Target{kappa2 + Grid::kPi * Grid::kPi * nu * nu,
                                kappa2, nu, k1, k2, trig});
        }
      }
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Target& a, const Target& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.kappa2 != b.kappa2) return a.kappa2 < b.kappa2;
    if (a.nu != b.nu) return a.nu < b.nu;
    if (a.k1 != b.k1) return a.k1 < b.k1;
    if (a.k2 != b.k2) return a.k2 < b.k2;
    return a.trig < b.trig;
  });
  if (d > static_cast<int>(pool.size())) {
    throw ConfigError("density: more targets requested than available modes");
  }

  std::vector<ComplexArray> targets;
  targets.reserve(d);
  const int nz = grid.nz();
  for (int i = 0; i < d; ++i) {
    const Target& t = pool[i];
    targets.emplace_back(grid.n_spec());
    std::complex<double>* out = targets.back().data();
    for (int j = 1; j < nz - 1; ++j) {
      const double prof = std::sin(Grid::kPi * t.nu * j * grid.h());
      if (t.k1 == 0 && t.k2 == 0) {
        out[grid.spec_index(0, 0, j)] = prof;
        continue;
      }
      const int i1 = (t.k1 + grid.n1()) % grid.n1();
      const std::complex<double> coeff =
          (t.trig == 1) ? std::complex<double>(0.0, -0.5)
                        : std::complex<double>(0.5, 0.0);
      out[grid.spec_index(i1, t.k2, j)] += coeff * prof;
      if (t.k2 == 0) {
        out[grid.spec_index(grid.mirror_i1(i1), 0, j)] +=
            std::conj(coeff) * prof;
      }
    }
    const double norm = l2_norm(grid, out);
    for (std::size_t idx = 0; idx < grid.n_spec(); ++idx) out[idx] /= norm;
  }

  // Tangent probe per basis element; Gram entries <e_i, theta_j(1)>.
  TangentSolver tangent(grid, stokes, opt);
  ScalarField theta(grid);
  Eigen::MatrixXd gram(d, m);
  for (int j = 0; j < m; ++j) {
    const Forcing zeta = [&](double t, std::complex<double>* out) {
      basis.add_basis_element(j, t - std::floor(t), 1.0, out);
    };
    theta.zero();
    tangent.advance_unit(traj, 0.0, theta.spec(), &zeta);
    for (int i = 0; i < d; ++i) {
      gram(i, j) = l2_inner(grid, targets[i].data(), theta.spec());
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  report.singular_values.assign(svd.singularValues().data(),
                                svd.singularValues().data() + std::min(d, m));
  return report;
}

}  // namespace benard
