// tangent.hpp: linearized (tangent) and dual sweeps along a frozen
// trajectory, the forcing-to-endpoint duality check, and the reachability
// (density) diagnostic built from tangent probes.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "benard/aligned.hpp"
#include "benard/grid.hpp"
#include "benard/noise.hpp"
#include "benard/stepper.hpp"
#include "benard/stokes.hpp"
#include "benard/trajectory.hpp"

namespace benard {

// Exact derivative of the primary unit map: advances theta through
//   dtheta/dt = O theta - skew(u_S, theta) - skew(M(theta), S) + zeta,
// with the same per-mode Crank-Nicolson blocks for the linear part O and the
// same two-step Adams-Bashforth (forward-Euler start) on the advection terms,
// so the map theta(0) -> theta(1) is the Jacobian of the nonlinear substep
// composition to round-off.
class TangentSolver {
 public:
  TangentSolver(const Grid& g, const StokesSolver& stokes,
                const StepperOptions& opt);

  double dt() const { return 1.0 / opt_.substeps; }

  void advance_unit(const FrozenTrajectory& traj, double t0,
                    std::complex<double>* theta_hat, const Forcing* zeta);

 private:
  const Grid* grid_;
  const StokesSolver* stokes_;
  StepperOptions opt_;
  Fft fft_;
  CnBlocks cn_;
  AdvectionOp adv_;
  ComplexArray frame_, u1h_, u2h_, u3h_, ncur_, nprev_, phi_;
  RealArray u1p_, u2p_, u3p_, sp_, tp_;
  std::vector<double> xr_, xi_, yr_, yi_;
};

// Companion backward sweep: integrates, in reversed time s = (t0 + 1) - t,
//   dpsi/ds = O psi + skew(u_S, psi) - M*(G(S, psi)),
//   G_alpha = (psi d_alpha S - S d_alpha psi) / 2,
// with the same symmetric Crank-Nicolson blocks (self-transposed) and
// Adams-Bashforth on the trajectory-dependent terms. The observer is called
// at every substep endpoint in sweep order (trajectory time decreasing).
class DualSolver {
 public:
  DualSolver(const Grid& g, const StokesSolver& stokes,
             const StepperOptions& opt);

  double dt() const { return 1.0 / opt_.substeps; }

  void reverse_unit(const FrozenTrajectory& traj, double t0,
                    std::complex<double>* psi_hat, const Observer* observer);

 private:
  const Grid* grid_;
  const StokesSolver* stokes_;
  StepperOptions opt_;
  Fft fft_;
  CnBlocks cn_;
  AdvectionOp adv_;
  ComplexArray frame_, u1h_, u2h_, u3h_, g1h_, g2h_, g3h_, mstar_, wcur_,
      wprev_, phi_;
  RealArray u1p_, u2p_, u3p_, sp_, pp_, d1s_, d2s_, d3s_, d1p_, d2p_, d3p_;
  std::vector<double> xr_, xi_, yr_, yi_;
};

struct DualityResult {
  double lhs = 0.0;         // <theta(t0+1), psi1> with theta(t0) = 0
  double rhs = 0.0;         // sum_n dt <zeta(t_{n+1/2}), midpoint psi>
  double residual = 0.0;    // |lhs - rhs| / normalizer
  double normalizer = 1.0;  // accumulated Cauchy-Schwarz bound of the pairing,
                            // sum_n dt ||zeta_mid|| ||psi_avg|| (cannot cancel)
};

// Runs one tangent/dual pair along `traj`: zeta is an admissible forcing
// realization and psi1 a normalized random smooth endpoint datum, both drawn
// deterministically from (seed, pair).
DualityResult duality_check(const Grid& grid, const StokesSolver& stokes,
                            const StepperOptions& opt,
                            const FrozenTrajectory& traj,
                            const NoiseBasis& basis, std::uint64_t seed,
                            std::uint64_t pair);

struct DensityReport {
  int d = 0;
  int m = 0;
  std::vector<double> singular_values;  // descending
};

// Reachability diagnostic: Gram matrix <e_i, theta_j(1)> of tangent endpoint
// states driven by each basis element, against the d lowest product modes
// trig(k . x_h) sin(pi nu x3) ordered by kappa^2 + pi^2 nu^2; reports its
// singular values.
DensityReport density_diagnostic(const Grid& grid, const StokesSolver& stokes,
                                 const StepperOptions& opt,
                                 const FrozenTrajectory& traj,
                                 const NoiseBasis& basis, int d);

}  // namespace benard
