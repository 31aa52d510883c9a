#pragma once

#include <cstddef>

#include "ksring/errors.hpp"

namespace ksring {

/// Model constants of the expanding-circle KS equation.
struct ModelParams {
  double delta = 4.0;  // fourth-order coefficient, > 0
  double alpha = 1.5;  // scaled Lewis number, > 1 here
  double v_c = 0.001;  // front speed, > 0
  double R0 = 6.0;     // initial radius, > 0

  /// Throws DomainError on delta <= 0, v_c <= 0, alpha <= 1, R0 <= 0 or non-finite values.
  void validate() const;
};

/// Uniform time grid t^n = n k, n = 0..N, with T = N k.
struct TimeGrid {
  double k = 0.0;
  std::size_t N = 0;
  double T = 0.0;

  /// k = T / N.
  static TimeGrid from_steps(double T, std::size_t N);
  /// N = round(T / k); throws DomainError unless N k reproduces T to 1e-12 relative.
  static TimeGrid from_increment(double k, double T);

  double time(std::size_t n) const noexcept { return static_cast<double>(n) * k; }
};

}  // namespace ksring
