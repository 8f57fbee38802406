// trajectory.cpp: frozen trajectory storage.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/trajectory.hpp"

#include <cstring>

namespace benard {

FrozenTrajectory::FrozenTrajectory(const Grid& g, int substeps)
    : grid_(&g),
      substeps_(substeps),
      frame_len_(g.modes().size() * static_cast<std::size_t>(g.nz())),
      store_(frame_len_ * (substeps + 1)) {}

void FrozenTrajectory::set_frame(int n, const std::complex<double>* s_hat) {
  std::complex<double>* dst = store_.data() + frame_len_ * n;
  const int nz = grid_->nz();
  for (const Mode& m : grid_->modes()) {
    std::memcpy(dst, s_hat + m.offset, nz * sizeof(std::complex<double>));
    dst += nz;
  }
}

void FrozenTrajectory::get_frame(int n, std::complex<double>* s_hat) const {
  std::memset(static_cast<void*>(s_hat), 0,
              grid_->n_spec() * sizeof(std::complex<double>));
  const std::complex<double>* src = store_.data() + frame_len_ * n;
  const int nz = grid_->nz();
  for (const Mode& m : grid_->modes()) {
    std::memcpy(s_hat + m.offset, src, nz * sizeof(std::complex<double>));
    src += nz;
  }
}

FrozenTrajectory FrozenTrajectory::record_unit(ThermalStepper& stepper,
                                               std::complex<double>* s_hat,
                                               double t0,
                                               const Forcing* forcing) {
  FrozenTrajectory traj(stepper.grid(), stepper.options().substeps);
  Observer obs = [&traj](int n, double, const std::complex<double>* s) {
    traj.set_frame(n, s);
  };
  stepper.advance_unit(s_hat, t0, forcing, &obs);
  return traj;
}

void add_conduction_profile(const Grid& g, double t_bottom, double t_top,
                            double* phys) {
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  for (int j = 0; j < g.nz(); ++j) {
    const double v = t_bottom + (t_top - t_bottom) * (j * g.h());
    double* p = phys + j * plane;
    for (std::size_t q = 0; q < plane; ++q) p[q] += v;
  }
}

}  // namespace benard
