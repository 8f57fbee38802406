// markov.hpp: coupled chain ensembles and mixing-rate estimation.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <cstdint>
#include <vector>

#include "benard/grid.hpp"
#include "benard/noise.hpp"
#include "benard/stepper.hpp"

namespace benard {

// Start state of the second ensemble (the first always starts at the
// conduction state).
enum class MixInit { kRandomBall, kConduction, kField };

struct MixingOptions {
  int chains = 64;
  int units = 28;               // unit-time steps; states recorded at 0..units
  int fit_lo = 5;               // inclusive fit window for the decay rate
  int fit_hi = 25;
  int observable_count = 32;
  std::uint64_t dictionary_seed = 77;  // fixed: dictionaries must match across
                                       // runs that are compared to each other
  double ball_radius = 0.02;    // H1 radius of the second ensemble's initial
                                // ball around the conduction state
  double amplitude_scale = 1.0; // multiplies the basis amplitude
  int workers = 1;
  MixInit init_b = MixInit::kRandomBall;
  // Common start state for MixInit::kField (non-owning, n_spec entries).
  const std::complex<double>* init_field = nullptr;
};

// Ordinary least squares y ~ slope * x + intercept with coefficient of
// determination r2.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct MixingReport {
  std::vector<double> distance;  // d_k = max_i |mean_A f_i - mean_B f_i|
  std::vector<double> coupling;  // mean H1 distance between paired chains
  double gamma = 0.0;            // decay rate of d_k from the log-linear fit
  double intercept = 0.0;
  double r2 = 0.0;
  double coupling_gamma = 0.0;   // same fit for the coupling distance
  double coupling_r2 = 0.0;
  double max_cfl = 0.0;
  int fit_points = 0;
};

// Evolves two ensembles of independent chains driven by identical noise
// realizations per chain index (one started at the conduction state, one in a
// random H1 ball around it), records the bounded-observable ensemble means
// after every unit, and fits the decay of their largest discrepancy.
//
// Results are bit-identical for any worker count: each chain evolves in its
// own integrator with inputs that depend only on (seed, chain, unit), and all
// reductions run on the calling thread in fixed chain order.
MixingReport run_mixing(const Grid& grid, const StepperOptions& stepper_opt,
                        const NoiseBasis& basis, std::uint64_t seed,
                        const MixingOptions& opt);

}  // namespace benard
