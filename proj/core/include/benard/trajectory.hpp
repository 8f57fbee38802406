// trajectory.hpp: frozen state histories (for linearized solves) and small
// state-construction helpers.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <vector>

#include "benard/stepper.hpp"

namespace benard {

// The states at every substep endpoint of one unit-time block, stored
// compactly (retained-mode columns only). The linearized and dual solvers
// read their frozen coefficients from here.
class FrozenTrajectory {
 public:
  FrozenTrajectory(const Grid& g, int substeps);

  const Grid& grid() const { return *grid_; }
  int substeps() const { return substeps_; }

  void set_frame(int n, const std::complex<double>* s_hat);
  // Expands frame n into a full spectral array (non-retained modes zero).
  void get_frame(int n, std::complex<double>* s_hat) const;

  // Advance s_hat through one unit block, recording every substep endpoint
  // (frames 0..substeps inclusive).
  static FrozenTrajectory record_unit(ThermalStepper& stepper,
                                      std::complex<double>* s_hat, double t0,
                                      const Forcing* forcing);

 private:
  const Grid* grid_;
  int substeps_;
  std::size_t frame_len_;
  std::vector<std::complex<double>> store_;
};

// Adds the conduction profile t_bottom + x3 (t_top - t_bottom) to a physical
// (x3-major) array; reconstructs temperature from a deviation field.
void add_conduction_profile(const Grid& g, double t_bottom, double t_top,
                            double* phys);

}  // namespace benard
