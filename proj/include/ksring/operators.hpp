#pragma once

#include "ksring/field.hpp"

namespace ksring {

struct ModelParams;

/// Coefficients of L = c4 * Delta_h^2 + c2 * Delta_h + c0 at one radius.
struct LinearOperatorCoefficients {
  double c4 = 0.0;  // delta / R^4
  double c2 = 0.0;  // (alpha - 1 + delta / R^2) / R^2
  double c0 = 0.0;  // (alpha - 1) / R^2

  static LinearOperatorCoefficients at_radius(const ModelParams& params, double R);

  /// Eigenvalue of L on a Fourier mode whose -Delta_h eigenvalue is s.
  double symbol(double s) const noexcept { return (c4 * s - c2) * s + c0; }
};

/// Eigenvalue of -Delta_h on mode m: (4/h^2) sin^2(m h / 2).
double laplacian_symbol(double m, double h) noexcept;

/// (V_{i-1} - 2 V_i + V_{i+1}) / h^2
PeriodicField laplacian_h(const PeriodicField& V);
/// Delta_h applied twice.
PeriodicField bilaplacian_h(const PeriodicField& V);

/// (V_{i-1} + V_i + V_{i+1}) (W_{i+1} - W_{i-1}); phi(V, V) ~ 6 h v v_sigma.
PeriodicField phi(const PeriodicField& V, const PeriodicField& W);

/// -(2V_{i-1} + V_i) W_{i-1} + (V_{i+1} - V_{i-1}) W_i + (2V_{i+1} + V_i) W_{i+1}.
/// psi(V, .) is the derivative of phi(V, V) in V:
/// phi(V+D, V+D) = phi(V, V) + psi(V, D) + phi(D, D).
PeriodicField psi(const PeriodicField& V, const PeriodicField& W);

/// c4 Delta_h^2 V + c2 Delta_h V + c0 V in one 5-point pass.
PeriodicField apply_L(const LinearOperatorCoefficients& coeffs, const PeriodicField& V);

}  // namespace ksring
