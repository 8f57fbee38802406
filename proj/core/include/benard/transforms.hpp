// transforms.hpp: batched 2-D Fourier transforms between x3-major physical
// storage and mode-major spectral storage.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>

#include "benard/aligned.hpp"
#include "benard/grid.hpp"

namespace benard {

// One r2c/c2r plan pair for a grid. Plans are created with FFTW_ESTIMATE:
// measured planning picks algorithms non-deterministically (it times
// candidates), which would break bit-identical reruns, and these small
// transforms gain little from it.
//
// An Fft instance is not thread-safe (it owns scratch); give each worker its
// own instance. Plan creation and destruction are serialized internally
// because the FFTW planner is a global resource.
//
// All buffers passed in must be 64-byte aligned (use AlignedArray).
class Fft {
 public:
  explicit Fft(const Grid& g);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  const Grid& grid() const { return grid_; }

  // Physical -> spectral, normalized so spectral values are true Fourier
  // coefficients (f = sum_k fhat_k exp(i k x)). The input is preserved.
  void forward(const double* phys, std::complex<double>* spec);

  // Spectral -> physical. The input is preserved (the c2r transform itself is
  // destructive, so it runs on an internal copy). Assumes the k2 = 0 line is
  // conjugate-symmetric, which all benard-mix states maintain.
  void backward(const std::complex<double>* spec, double* phys);

 private:
  Grid grid_;
  void* fwd_ = nullptr;  // fftw_plan, kept as void* to keep fftw3.h private
  void* bwd_ = nullptr;
  RealArray rbuf_;
  ComplexArray cbuf_;
};

}  // namespace benard
