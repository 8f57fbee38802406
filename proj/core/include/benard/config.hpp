// config.hpp: run configuration, key=value parsing, canonical hashing.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace benard {

// Every tunable of the laboratory in one flat key=value namespace. Defaults
// reproduce the reference setup; a config file and command-line overrides
// both assign to the same keys. The canonical serialization (and the FNV-1a
// hash derived from it) excludes execution details (worker count, output
// directory), so runs that differ only in those produce identical hashes.
struct RunConfig {
  // grid
  int n1 = 32;
  int n2 = 32;
  int n3 = 32;
  // physics
  double rayleigh = 1.0e4;
  double t_bottom = 0.165;
  double t_top = 0.0;
  // integrator
  int substeps = 256;
  double cfl_limit = 0.5;
  int units = 4;
  std::uint64_t seed = 1;
  // forcing basis
  int noise_m = 64;
  double noise_c = 0.25;
  double noise_b0 = 1.0;
  double noise_s = 1.0;
  // Forcing amplitude, measured in the path-energy norm of the basis (the
  // Laplacian term dominates that norm, so basis elements are ~6e-3 in L2
  // and unit-order amplitudes produce ~1e-4 responses). 150 puts the
  // stationary H1 radius near 0.02 at the default physics.
  double noise_amplitude = 150.0;
  // mixing experiment
  int mix_chains = 64;
  int mix_units = 28;
  int mix_substeps = 128;
  int mix_fit_lo = 5;
  int mix_fit_hi = 25;
  int mix_observables = 32;
  double mix_ball_radius = 0.02;
  std::uint64_t mix_dict_seed = 77;
  double mix_amplitude_scale = 1.0;
  // Second ensemble start: "conduction", "random", or "checkpoint:<path>".
  std::string mix_init = "random";
  // profile control
  double control_eps1 = 0.03125;
  double control_eps2 = 0.21875;
  int control_l = 0;
  int control_trials = 10;
  int control_trial_units = 8;
  double control_trial_radius = 0.02;
  int control_max_periodic_units = 64;
  double control_periodic_tol = 1.0e-8;
  double control_sweep_gate = 0.9;
  double control_ratio_gate = 0.5;
  int control_min_pass = 9;
  // duality check
  int adjoint_pairs = 20;
  int adjoint_subset = 5;
  double adjoint_traj_scale = 0.1;
  // reachability diagnostic
  int density_d = 20;
  // dissipativity experiment
  std::string diss_radii = "10,100,1000";
  double diss_threshold = 0.04;
  int diss_max_units = 64;
  // Entry-time runs are deterministic by default: large-amplitude initial
  // data with active forcing ignites transient convection the desk-scale
  // grid cannot resolve, and the logarithmic entry bound concerns the decay
  // of the initial datum, for which the noise is lower-order.
  double diss_amplitude_scale = 0.0;
  // execution (excluded from the canonical serialization)
  int workers = 1;
  std::string out_dir = ".";

  // Loads key=value lines (# comments, blank lines ignored) from `path`,
  // then applies overrides of the same form. Unknown keys are errors.
  static RunConfig load(const std::string& path,
                        const std::vector<std::string>& overrides);
  static RunConfig from_overrides(const std::vector<std::string>& overrides);

  void set(const std::string& key, const std::string& value);
  void validate() const;
  // Non-fatal advisories (e.g. a stably stratified profile).
  std::vector<std::string> warnings() const;

  // Canonical serialization: sorted keys, one per line, %.17g doubles.
  std::string canonical() const;
  // The same content as sorted (key, value) pairs, for report embedding.
  std::vector<std::pair<std::string, std::string>> items() const;
  // FNV-1a of the canonical serialization, as a hex string.
  std::string hash() const;
};

}  // namespace benard
