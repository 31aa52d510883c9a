#include "ksring/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace ksring {

namespace {
// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealDft::RealDft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("RealDft: length must be positive");
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(n);
  auto* spec = fftw_alloc_complex(n / 2 + 1);
  spectral_ = spec;
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, spec, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(len, spec, real_, FFTW_ESTIMATE);
  if (!forward_plan_ || !inverse_plan_) {
    release();
    throw std::runtime_error("RealDft: FFTW planning failed");
  }
}

RealDft::~RealDft() { release(); }

RealDft::RealDft(RealDft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      spectral_(std::exchange(other.spectral_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealDft& RealDft::operator=(RealDft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    real_ = std::exchange(other.real_, nullptr);
    spectral_ = std::exchange(other.spectral_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealDft::release() noexcept {
  if (!real_ && !spectral_ && !forward_plan_ && !inverse_plan_) return;
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(spectral_);
  forward_plan_ = inverse_plan_ = nullptr;
  real_ = nullptr;
  spectral_ = nullptr;
}

void RealDft::forward(std::span<const double> x, std::span<std::complex<double>> out) {
  if (x.size() != n_ || out.size() != n_ / 2 + 1)
    throw std::invalid_argument("RealDft::forward: size mismatch");
  std::copy(x.begin(), x.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = static_cast<const fftw_complex*>(spectral_);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = {spec[m][0], spec[m][1]};
}

void RealDft::inverse(std::span<const std::complex<double>> spectrum, std::span<double> out) {
  if (spectrum.size() != n_ / 2 + 1 || out.size() != n_)
    throw std::invalid_argument("RealDft::inverse: size mismatch");
  auto* spec = static_cast<fftw_complex*>(spectral_);
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    spec[m][0] = spectrum[m].real();
    spec[m][1] = spectrum[m].imag();
  }
  // c2r destroys its input; the buffer is rewritten on every call.
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i] * scale;
}

}  // namespace ksring
