// control.cpp: boundary-layer forcing synthesis and contraction diagnostics.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/control.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "benard/errors.hpp"
#include "benard/norms.hpp"
#include "benard/observables.hpp"
#include "benard/rng.hpp"

namespace benard {

namespace {
constexpr double kTwoSqrt3 = 2.0 * 1.7320508075688772;

// C^2 quintic step s(y) = 6y^5 - 15y^4 + 10y^3 and derivatives, clamped.
double qstep(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return ((6.0 * y - 15.0) * y + 10.0) * y * y * y;
}
double qstep_d1(double y) {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return ((30.0 * y - 60.0) * y + 30.0) * y * y;
}
double qstep_d2(double y) {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return ((120.0 * y - 180.0) * y + 60.0) * y;
}
}  // namespace

BoundaryController::BoundaryController(const Grid& grid,
                                       const StokesSolver& stokes,
                                       const StepperOptions& stepper_opt,
                                       const NoiseBasis& basis,
                                       const ControlOptions& copt)
    : grid_(&grid),
      stokes_(&stokes),
      basis_(&basis),
      copt_(copt),
      stepper_(grid, stokes, stepper_opt),
      target_(grid),
      y_hat_(grid.n_spec()),
      rhs_(grid.nz()),
      wcol_(grid.nz()) {
  if (!(copt.eps1 > 0.0 && copt.eps1 < copt.eps2 &&
        copt.eps2 < basis.options().c)) {
    throw ConfigError("control: profile ramp must satisfy 0 < eps1 < eps2 < c");
  }
  const int nz = grid.nz();
  chi_.resize(nz);
  chi_d1_.resize(nz);
  chi_d2_.resize(nz);
  const double tb = stepper_opt.t_bottom, tt = stepper_opt.t_top;
  const double span = copt.eps2 - copt.eps1;
  for (int j = 0; j < nz; ++j) {
    const double x3 = j * grid.h();
    const double y = (x3 - copt.eps1) / span;
    chi_[j] = tb + (tt - tb) * qstep(y);
    chi_d1_[j] = (tt - tb) * qstep_d1(y) / span;
    chi_d2_[j] = (tt - tb) * qstep_d2(y) / (span * span);
  }
  // Target deviation S_chi = chi - conduction profile (a pure x3 profile, so
  // it carries no flow and vanishes at both walls).
  target_.zero();
  std::complex<double>* col = target_.spec() + grid.spec_index(0, 0, 0);
  for (int j = 0; j < nz; ++j) {
    const double x3 = j * grid.h();
    col[j] = chi_[j] - (tb + x3 * (tt - tb));
  }

  // Horizontal mode of each raw element, for the obstruction samples.
  const int m = basis.size();
  raw_mode_.resize(m);
  for (int i = 0; i < m; ++i) {
    int i1 = 0, i2 = 0;
    basis.raw_mode(i, i1, i2);
    std::size_t idx = grid.modes().size();
    for (std::size_t mi = 0; mi < grid.modes().size(); ++mi) {
      if (grid.modes()[mi].i1 == i1 && grid.modes()[mi].i2 == i2) {
        idx = mi;
        break;
      }
    }
    if (idx == grid.modes().size()) {
      throw ConfigError("control: forcing element outside retained modes");
    }
    raw_mode_[i] = idx;
  }
}

void BoundaryController::build_quadrature(int l) {
  if (l == gram_built_for_) return;
  const int nsub = stepper_.options().substeps;
  const double dt = 1.0 / nsub;
  // Time quadrature of tau_p tau_q by the same trapezoid rule the projection
  // uses; the (p = q = 1) time-derivative product integrates exactly to 12.
  double tt[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (int n = 0; n <= nsub; ++n) {
    const double w = (n == 0 || n == nsub) ? 0.5 : 1.0;
    const double t = n * dt;
    const double t0 = NoiseBasis::tau(0, t), t1 = NoiseBasis::tau(1, t);
    tt[0][0] += w * t0 * t0;
    tt[0][1] += w * t0 * t1;
    tt[1][1] += w * t1 * t1;
  }
  tt[0][0] *= dt;
  tt[0][1] *= dt;
  tt[1][1] *= dt;
  tt[1][0] = tt[0][1];

  std::vector<double> eraw(static_cast<std::size_t>(l) * l, 0.0);
  for (int i = 0; i < l; ++i) {
    for (int k = i; k < l; ++k) {
      double l2 = 0.0, lap = 0.0;
      basis_->raw_spatial_products(i, k, l2, lap);
      if (l2 == 0.0 && lap == 0.0) continue;
      double e = tt[basis_->raw_p(i)][basis_->raw_p(k)] * (l2 + lap);
      if (basis_->raw_p(i) == 1 && basis_->raw_p(k) == 1) e += 12.0 * l2;
      eraw[static_cast<std::size_t>(i) * l + k] = e;
      eraw[static_cast<std::size_t>(k) * l + i] = e;
    }
  }
  gram_l_.assign(static_cast<std::size_t>(l) * l, 0.0);
  for (int a = 0; a < l; ++a) {
    for (int b = a; b < l; ++b) {
      double acc = 0.0;
      for (int i = 0; i <= a; ++i) {
        const double xa = basis_->basis_weight(i, a);
        if (xa == 0.0) continue;
        for (int k = 0; k <= b; ++k) {
          acc += xa * eraw[static_cast<std::size_t>(i) * l + k] *
                 basis_->basis_weight(k, b);
        }
      }
      gram_l_[static_cast<std::size_t>(a) * l + b] = acc;
      gram_l_[static_cast<std::size_t>(b) * l + a] = acc;
    }
  }
  gram_built_for_ = l;
}

void BoundaryController::project(int l, const std::vector<double>& e_samp,
                                 const std::vector<double>& g_samp,
                                 std::vector<double>& c) const {
  const int nsub = stepper_.options().substeps;
  const double dt = 1.0 / nsub;
  // Raw-element functionals: trapezoid for the tau-weighted spatial products;
  // the time-derivative term integrates by parts exactly because tau is
  // linear, leaving endpoint L2 pairings.
  std::vector<double> praw(l, 0.0);
  for (int i = 0; i < l; ++i) {
    const int p = basis_->raw_p(i);
    double acc = 0.0;
    for (int n = 0; n <= nsub; ++n) {
      const double w = (n == 0 || n == nsub) ? 0.5 : 1.0;
      acc += w * NoiseBasis::tau(p, n * dt) *
             e_samp[static_cast<std::size_t>(n) * l + i];
    }
    praw[i] = dt * acc;
    if (p == 1) {
      praw[i] += kTwoSqrt3 *
                 (g_samp[static_cast<std::size_t>(nsub) * l + i] - g_samp[i]);
    }
  }
  // Basis-space right-hand side and the SPD quadrature-Gram solve.
  std::vector<double> proj(l, 0.0);
  for (int a = 0; a < l; ++a) {
    double acc = 0.0;
    for (int i = 0; i <= a; ++i) {
      acc += basis_->basis_weight(i, a) * praw[i];
    }
    proj[a] = acc;
  }
  std::vector<double> gram = gram_l_;
  const int info = LAPACKE_dposv(LAPACK_ROW_MAJOR, 'L', l, 1, gram.data(), l,
                                 proj.data(), 1);
  if (info != 0) {
    throw SolverError("control: projection Gram is not positive definite");
  }
  c = proj;
}

std::vector<double> BoundaryController::control_unit(
    std::complex<double>* s_hat, double t0, int l,
    const std::vector<double>& warm, double* increment) {
  const Grid& g = *grid_;
  const int nsub = stepper_.options().substeps;
  const int nz = g.nz();
  const double ra = stokes_->rayleigh();
  build_quadrature(l);

  // Distinct nonzero horizontal modes feeding the first l elements.
  std::vector<std::size_t> dyn_modes;
  bool has_mean = false;
  for (int i = 0; i < l; ++i) {
    const std::size_t mi = raw_mode_[i];
    if (g.modes()[mi].kappa2 == 0.0) {
      has_mean = true;
      continue;
    }
    if (std::find(dyn_modes.begin(), dyn_modes.end(), mi) == dyn_modes.end()) {
      dyn_modes.push_back(mi);
    }
  }

  // Static part of the obstruction: the mean column is -chi''.
  y_hat_.fill_zero();
  if (has_mean) {
    std::complex<double>* col = y_hat_.data() + g.spec_index(0, 0, 0);
    for (int j = 1; j < nz - 1; ++j) col[j] = -chi_d2_[j];
  }

  std::vector<double> e_samp(static_cast<std::size_t>(nsub + 1) * l);
  std::vector<double> g_samp(static_cast<std::size_t>(nsub + 1) * l);
  const Observer observer = [&](int n, double, const std::complex<double>* s) {
    // Obstruction samples Y = M3(v) chi' - chi'' at the controlled modes;
    // M3(v) = M3(S) because the target profile carries no flow.
    for (const std::size_t mi : dyn_modes) {
      const Mode& mode = g.modes()[mi];
      const std::complex<double>* scol = s + mode.offset;
      std::complex<double>* ycol = y_hat_.data() + mode.offset;
      for (int j = 1; j < nz - 1; ++j) {
        rhs_[j - 1] = ra * mode.kappa2 * scol[j];
      }
      stokes_->quartic_solve(mi, rhs_.data(), wcol_.data());
      ycol[0] = 0.0;
      ycol[nz - 1] = 0.0;
      for (int j = 1; j < nz - 1; ++j) {
        ycol[j] = wcol_[j - 1] * chi_d1_[j];
      }
    }
    for (int i = 0; i < l; ++i) {
      e_samp[static_cast<std::size_t>(n) * l + i] =
          basis_->raw_e_spatial_pairing(i, y_hat_.data());
      g_samp[static_cast<std::size_t>(n) * l + i] =
          basis_->raw_l2_pairing(i, y_hat_.data());
    }
  };

  // Predictor pass on a copy, driven by the warm-start coefficients.
  ComplexArray probe(g.n_spec());
  std::memcpy(probe.data(), s_hat, g.n_spec() * sizeof(std::complex<double>));
  std::vector<double> warm_m(basis_->size(), 0.0);
  for (int i = 0; i < l && i < static_cast<int>(warm.size()); ++i) {
    warm_m[i] = warm[i];
  }
  const std::vector<double> warm_weights = basis_->collapse(warm_m);
  const Forcing warm_force = [&](double t, std::complex<double>* out) {
    basis_->add_raw_eval(warm_weights, t - std::floor(t), out);
  };
  stepper_.advance_unit(probe.data(), t0, &warm_force, &observer);

  std::vector<double> c;
  project(l, e_samp, g_samp, c);
  if (increment) {
    double inc = 0.0;
    for (int i = 0; i < l; ++i) {
      const double w = i < static_cast<int>(warm.size()) ? warm[i] : 0.0;
      inc = std::max(inc, std::abs(c[i] - w));
    }
    *increment = inc;
  }
  a_min_seen_ = std::max(a_min_seen_, coeff_amplitude(c));

  // Corrector pass: the certified trajectory.
  replay_unit(s_hat, t0, c);
  return c;
}

void BoundaryController::replay_unit(std::complex<double>* s_hat, double t0,
                                     const std::vector<double>& coeffs) {
  std::vector<double> full(basis_->size(), 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) full[i] = coeffs[i];
  const std::vector<double> weights = basis_->collapse(full);
  const Forcing force = [&](double t, std::complex<double>* out) {
    basis_->add_raw_eval(weights, t - std::floor(t), out);
  };
  stepper_.advance_unit(s_hat, t0, &force, nullptr);
}

double BoundaryController::coeff_amplitude(const std::vector<double>& c) const {
  double a = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    a = std::max(a, std::abs(c[j]) / basis_->b(static_cast<int>(j)));
  }
  return a;
}

ControlReport BoundaryController::find_periodic(int l) {
  const Grid& g = *grid_;
  ControlReport rep;
  rep.l = l;
  ComplexArray state(g.n_spec()), prev(g.n_spec()), diff(g.n_spec());
  ComplexArray unit_start(g.n_spec());
  std::memcpy(state.data(), target_.spec(),
              g.n_spec() * sizeof(std::complex<double>));
  std::memcpy(prev.data(), state.data(),
              g.n_spec() * sizeof(std::complex<double>));
  std::vector<double> warm, c_last;
  std::vector<double> deltas;
  for (int u = 0; u < copt_.max_periodic_units; ++u) {
    std::memcpy(unit_start.data(), state.data(),
                g.n_spec() * sizeof(std::complex<double>));
    double inc = 0.0;
    c_last = control_unit(state.data(), static_cast<double>(u), l, warm, &inc);
    warm = c_last;
    rep.max_coeff_increment = std::max(rep.max_coeff_increment, inc);
    for (std::size_t i = 0; i < g.n_spec(); ++i) {
      diff[i] = state[i] - prev[i];
    }
    const double delta = h1_norm(g, diff.data());
    deltas.push_back(delta);
    std::memcpy(prev.data(), state.data(),
                g.n_spec() * sizeof(std::complex<double>));
    rep.periodic_units = u + 1;
    rep.periodic_residual = delta;
    if (delta <= copt_.periodic_tol) {
      rep.periodic_converged = true;
      break;
    }
  }
  // Per-unit contraction from consecutive block-start increments, skipping
  // the initial transient and the round-off floor.
  double lsum = 0.0;
  int lcount = 0;
  for (std::size_t u = 2; u < deltas.size(); ++u) {
    if (deltas[u - 1] > 10.0 * copt_.periodic_tol && deltas[u] > 0.0) {
      lsum += std::log(deltas[u] / deltas[u - 1]);
      ++lcount;
    }
  }
  rep.contraction_ratio = lcount > 0 ? std::exp(lsum / lcount) : 0.0;

  // Certified-coefficient replay of the final unit must retrace it exactly.
  if (rep.periodic_converged && !c_last.empty()) {
    replay_unit(unit_start.data(),
                static_cast<double>(rep.periodic_units - 1), c_last);
    for (std::size_t i = 0; i < g.n_spec(); ++i) {
      diff[i] = unit_start[i] - state[i];
    }
    rep.replay_error = h1_norm(g, diff.data());
  }

  periodic_state_.resize(g.n_spec());
  std::memcpy(periodic_state_.data(), state.data(),
              g.n_spec() * sizeof(std::complex<double>));
  periodic_warm_ = warm;
  return rep;
}

ControlReport BoundaryController::run(std::uint64_t seed) {
  const Grid& g = *grid_;
  std::vector<int> candidates;
  if (copt_.l > 0) {
    candidates.push_back(std::min(copt_.l, basis_->size()));
  } else {
    for (int l : {1, 2, 4, 8, 16}) {
      if (l <= basis_->size()) candidates.push_back(l);
    }
  }

  ControlReport chosen;
  bool have = false;
  std::vector<int> sweep_l;
  std::vector<double> sweep_ratio;
  for (int l : candidates) {
    a_min_seen_ = 0.0;
    ControlReport rep = find_periodic(l);
    sweep_l.push_back(l);
    sweep_ratio.push_back(rep.contraction_ratio);
    if (rep.periodic_converged && rep.contraction_ratio <= copt_.sweep_gate) {
      chosen = rep;
      have = true;
      break;
    }
  }
  if (!have) {
    if (!sweep_l.empty()) {
      chosen.sweep_l = sweep_l;
      chosen.sweep_ratio = sweep_ratio;
    }
    chosen.ok = false;
    return chosen;
  }
  chosen.sweep_l = sweep_l;
  chosen.sweep_ratio = sweep_ratio;

  // Perturbation trials around the periodic state.
  ScalarField pert(g);
  ComplexArray state(g.n_spec()), diff(g.n_spec());
  for (int trial = 0; trial < copt_.trials; ++trial) {
    random_ball_field(g, seed, stream::kControlTrial,
                      static_cast<std::uint64_t>(trial), copt_.trial_radius,
                      pert);
    for (std::size_t i = 0; i < g.n_spec(); ++i) {
      state[i] = periodic_state_[i] + pert.spec()[i];
      diff[i] = state[i] - periodic_state_[i];
    }
    const double denom = h1_norm(g, diff.data());
    std::vector<double> warm = periodic_warm_;
    for (int u = 0; u < copt_.trial_units; ++u) {
      double inc = 0.0;
      warm = control_unit(state.data(), static_cast<double>(u), chosen.l, warm,
                          &inc);
      chosen.max_coeff_increment = std::max(chosen.max_coeff_increment, inc);
    }
    for (std::size_t i = 0; i < g.n_spec(); ++i) {
      diff[i] = state[i] - periodic_state_[i];
    }
    const double ratio = h1_norm(g, diff.data()) / denom;
    chosen.trial_ratios.push_back(ratio);
    if (ratio <= copt_.ratio_gate) ++chosen.trials_passed;
  }
  chosen.a_min = a_min_seen_;
  chosen.ok = chosen.periodic_converged &&
              chosen.trials_passed >= copt_.min_pass;
  return chosen;
}

}  // namespace benard
