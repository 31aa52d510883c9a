#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ksring {

/// Real-to-half-complex DFT of fixed length, backed by FFTW.
/// Not thread-safe per instance; use one instance per thread.
class RealDft {
public:
  explicit RealDft(std::size_t n);
  ~RealDft();
  RealDft(const RealDft&) = delete;
  RealDft& operator=(const RealDft&) = delete;
  RealDft(RealDft&& other) noexcept;
  RealDft& operator=(RealDft&& other) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// out[m] = sum_j x[j] exp(-2 pi i j m / n) for m = 0..n/2 (unnormalized).
  void forward(std::span<const double> x, std::span<std::complex<double>> out);
  /// Inverse of forward, including the 1/n normalization.
  void inverse(std::span<const std::complex<double>> spectrum, std::span<double> out);

private:
  void release() noexcept;

  std::size_t n_ = 0;
  double* real_ = nullptr;
  void* spectral_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace ksring
