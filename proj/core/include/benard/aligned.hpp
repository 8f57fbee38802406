// aligned.hpp: 64-byte-aligned heap arrays for FFT and BLAS hot paths.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <new>
#include <utility>

namespace benard {

// Fixed-size heap array aligned to 64 bytes (cache line / AVX-512 friendly,
// and sufficient for FFTW's SIMD requirements). Value-initialized to zero.
template <class T>
class AlignedArray {
 public:
  AlignedArray() = default;

  explicit AlignedArray(std::size_t n) : size_(n) {
    if (n == 0) return;
    // aligned_alloc requires the size to be a multiple of the alignment.
    std::size_t bytes = ((n * sizeof(T) + 63) / 64) * 64;
    data_ = static_cast<T*>(std::aligned_alloc(64, bytes));
    if (!data_) throw std::bad_alloc();
    std::memset(static_cast<void*>(data_), 0, bytes);
  }

  AlignedArray(const AlignedArray& o) : AlignedArray(o.size_) {
    if (size_) std::memcpy(static_cast<void*>(data_), o.data_, size_ * sizeof(T));
  }
  AlignedArray& operator=(const AlignedArray& o) {
    if (this != &o) {
      AlignedArray tmp(o);
      swap(tmp);
    }
    return *this;
  }
  AlignedArray(AlignedArray&& o) noexcept { swap(o); }
  AlignedArray& operator=(AlignedArray&& o) noexcept {
    swap(o);
    return *this;
  }
  ~AlignedArray() { std::free(data_); }

  void swap(AlignedArray& o) noexcept {
    std::swap(data_, o.data_);
    std::swap(size_, o.size_);
  }

  T* data() { return data_; }
  const T* data() const { return data_; }
  std::size_t size() const { return size_; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T* begin() { return data_; }
  T* end() { return data_ + size_; }
  const T* begin() const { return data_; }
  const T* end() const { return data_ + size_; }

  void fill_zero() {
    if (size_) std::memset(static_cast<void*>(data_), 0, size_ * sizeof(T));
  }

 private:
  T* data_ = nullptr;
  std::size_t size_ = 0;
};

using RealArray = AlignedArray<double>;
using ComplexArray = AlignedArray<std::complex<double>>;

}  // namespace benard
