// transforms.cpp: FFTW-backed batched transforms with deterministic plans.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/transforms.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace benard {

namespace {
// The FFTW planner mutates global state; serialize plan create/destroy.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(const Grid& g)
    : grid_(g), rbuf_(g.n_phys()), cbuf_(g.n_spec()) {
  const int n[2] = {g.n1(), g.n2()};
  const int nz = g.nz();
  std::lock_guard<std::mutex> lock(planner_mutex());
  // Forward: batch of nz transforms, one per horizontal plane. Physical
  // planes are contiguous (stride 1, distance n1*n2); spectral output lands
  // mode-major (stride nz between modes, distance 1 between planes), so each
  // mode's vertical column comes out contiguous.
  fwd_ = fftw_plan_many_dft_r2c(
      2, n, nz, rbuf_.data(), nullptr, 1, g.n1() * g.n2(),
      reinterpret_cast<fftw_complex*>(cbuf_.data()), nullptr, nz, 1,
      FFTW_ESTIMATE);
  bwd_ = fftw_plan_many_dft_c2r(
      2, n, nz, reinterpret_cast<fftw_complex*>(cbuf_.data()), nullptr, nz, 1,
      rbuf_.data(), nullptr, 1, g.n1() * g.n2(), FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw SolverError("fft: plan creation failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const double* phys, std::complex<double>* spec) {
  // r2c is non-destructive out-of-place; execute directly on caller buffers.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_),
                       const_cast<double*>(phys),
                       reinterpret_cast<fftw_complex*>(spec));
  const double scale = 1.0 / (static_cast<double>(grid_.n1()) * grid_.n2());
  const std::size_t n = grid_.n_spec();
  for (std::size_t i = 0; i < n; ++i) spec[i] *= scale;
}

void Fft::backward(const std::complex<double>* spec, double* phys) {
  // c2r destroys its input, so run it on an internal copy.
  std::memcpy(cbuf_.data(), spec, grid_.n_spec() * sizeof(std::complex<double>));
  fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_),
                       reinterpret_cast<fftw_complex*>(cbuf_.data()), phys);
}

}  // namespace benard
