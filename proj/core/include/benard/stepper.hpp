// stepper.hpp: semi-implicit time integration of the temperature deviation.
// Crank-Nicolson on the full linear part (diffusion + mean-profile coupling,
// per-mode dense symmetric blocks), Adams-Bashforth on the skew-form
// advection, bounded forcing sampled at substep midpoints.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "benard/aligned.hpp"
#include "benard/grid.hpp"
#include "benard/stokes.hpp"
#include "benard/transforms.hpp"

namespace benard {

// Adds the forcing density eta_hat(t) into the supplied spectral accumulator
// (retained modes, interior nodes). Called once per substep at the midpoint.
using Forcing =
    std::function<void(double t, std::complex<double>* add_into_hat)>;

// Called before the first substep (index 0) and after each substep n with the
// current state; t is the state's time.
using Observer = std::function<void(int substep, double t,
                                    const std::complex<double>* s_hat)>;

struct StepperOptions {
  double rayleigh = 1.0e4;
  double t_bottom = 0.0;  // conduction profile: t_bottom + x3*(t_top-t_bottom)
  double t_top = 0.0;
  int substeps = 256;  // per unit time
  double cfl_limit = 0.5;
  bool check_cfl = true;
};

// Per-mode dense Crank-Nicolson operators A_pm = I -/+ (dt/2) O_k for the
// linear part O_k = (L - kappa^2) + dtemp * M3_k on interior nodes, where
// dtemp = t_bottom - t_top. O_k is symmetric (tridiagonal diffusion plus the
// symmetric coupling block), so A_plus is SPD for every stable configuration
// and its Cholesky factor also serves the transposed (dual) sweep.
class CnBlocks {
 public:
  CnBlocks(const Grid& g, const StokesSolver& stokes, double dt, double dtemp);

  int ni() const { return ni_; }
  double dt() const { return dt_; }

  // y := A_minus x for one mode (separate real/imag interior vectors).
  void apply_minus(std::size_t mode, const double* xr, const double* xi,
                   double* yr, double* yi) const;
  // In place solve A_plus y = rhs for one mode.
  void solve_plus(std::size_t mode, double* yr, double* yi) const;

 private:
  struct ModeOp {
    std::vector<double> a_minus;  // dense ni x ni, row-major
    std::vector<double> chol;     // dense lower Cholesky of A_plus, col-major
  };
  int ni_;
  double dt_;
  std::vector<ModeOp> ops_;
};

// Skew-symmetric (split-form) advection: skew(u, f) =
// (u . grad f + div(u f)) / 2, pseudo-spectral horizontally and centered
// differences vertically. With the 2/3-rule band limit the products are
// alias-free, and because u3 and f vanish at the walls the discrete pairing
// <skew(u, f), f> vanishes to round-off -- the stability property the
// energy-balance checks rely on.
class AdvectionOp {
 public:
  explicit AdvectionOp(const Grid& g);

  // out_hat += scale * skew(u, f) on interior nodes of retained modes.
  // u is physical (x3-major, wall planes zero); f is supplied in both
  // representations (they must agree).
  void add_skew(Fft& fft, const double* u1, const double* u2, const double* u3,
                const std::complex<double>* f_hat, const double* f_phys,
                double scale, std::complex<double>* out_hat);

 private:
  const Grid* grid_;
  RealArray g1_, g2_, g3_, fa_, fb_;
  ComplexArray ha_, hb_, hc_;
};

// Advances the deviation S = T - conduction profile through unit-time blocks.
// Within a block: CNAB2 with a forward-Euler start on the advection term (so
// blocks are self-contained and checkpoint restarts are exact), forcing
// sampled at substep midpoints, advective CFL monitored every substep.
class ThermalStepper {
 public:
  ThermalStepper(const Grid& g, const StokesSolver& stokes,
                 const StepperOptions& opt);

  const Grid& grid() const { return *grid_; }
  const StokesSolver& stokes() const { return *stokes_; }
  const StepperOptions& options() const { return opt_; }
  double dt() const { return 1.0 / opt_.substeps; }
  Fft& fft() { return fft_; }
  const CnBlocks& cn() const { return cn_; }

  // Drop Adams-Bashforth memory; the next substep uses forward Euler.
  void begin_unit();

  // One substep from time t to t + dt. Throws CflError when the advective
  // Courant number exceeds the configured limit.
  void substep(std::complex<double>* s_hat, double t, const Forcing* forcing);

  // begin_unit() followed by substeps() substeps from t0 (= unit index).
  void advance_unit(std::complex<double>* s_hat, double t0,
                    const Forcing* forcing, const Observer* observer);

  // Most recent advective Courant number (diagnostic).
  double last_cfl() const { return last_cfl_; }

 private:
  const Grid* grid_;
  const StokesSolver* stokes_;
  StepperOptions opt_;
  Fft fft_;
  CnBlocks cn_;
  AdvectionOp adv_;
  ComplexArray u1h_, u2h_, u3h_, ncur_, nprev_, phi_;
  RealArray u1p_, u2p_, u3p_, sp_;
  std::vector<double> xr_, xi_, yr_, yi_;
  bool have_prev_ = false;
  double last_cfl_ = 0.0;
};

}  // namespace benard
