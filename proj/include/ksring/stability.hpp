#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ksring/field.hpp"
#include "ksring/params.hpp"

namespace ksring {

/// Growth rate of mode m of the linearization about the circle:
///   lambda_m = -delta m^4/R^4 + (m^2/R^2)(alpha - 1 + delta/R^2) - (alpha - 1)/R^2,
/// with lambda_1 = 0 exactly. lambda_{-m} = lambda_m. Throws DomainError for m < 1 or R <= 0.
double lambda_m(int m, double R, const ModelParams& params);

/// delta on the |m|-mode neutral curve: (alpha - 1) R^2 / m^2, m >= 2.
double neutral_delta(int m, double R, const ModelParams& params);

/// R_* = 2 sqrt(delta / (alpha - 1)): below it every mode |m| >= 2 decays.
double critical_radius(const ModelParams& params);

struct SpectralReport {
  double R = 0.0;  // frozen radius the report was evaluated at
  std::map<int, double> lambda;  // m = 1..m_max
  std::vector<int> unstable_modes;
  std::optional<int> predicted_dominant;  // argmax lambda over the unstable modes
  std::optional<int> measured_dominant;   // argmax |u_m|, m >= 1, of the probe
  double R_star = 0.0;

  bool neutrally_stable() const noexcept { return unstable_modes.empty(); }
};

/// Ties closer than 1e-12 resolve to the smaller mode.
SpectralReport spectral_report(double R, const ModelParams& params, int m_max,
                               const PeriodicField* probe = nullptr);

/// argmax over m >= 1 of mode_amplitudes(field).
int dominant_mode(const PeriodicField& field);

/// Complex Fourier amplitudes u_m, |m| <= m_max, of a real function.
class GalerkinState {
public:
  explicit GalerkinState(int m_max);

  int m_max() const noexcept { return m_max_; }
  std::complex<double>& operator[](int m) { return u_.at(static_cast<std::size_t>(m + m_max_)); }
  const std::complex<double>& operator[](int m) const {
    return u_.at(static_cast<std::size_t>(m + m_max_));
  }

  /// Amplitudes (1/J) sum_i U_i exp(-i m sigma_i) of a sampled field.
  static GalerkinState from_field(const PeriodicField& U, int m_max);

  /// max_m |u_{-m} - conj(u_m)|
  double reality_defect() const;
  double max_amplitude() const;

  GalerkinState& axpy(double a, const GalerkinState& x);

private:
  int m_max_;
  std::vector<std::complex<double>> u_;
};

/// Truncated modal right-hand side
///   du_m/dt = lambda_m u_m - (v_c / 2R^2) sum_{m1+m2=m, m1 m2 != 0} m1 m2 u_{m1} u_{m2},
/// with lambda_0 = -(alpha-1)/R^2 for the mean. Throws DomainError if the
/// input violates u_{-m} = conj(u_m) by more than 1e-12 (relative to max(1, |u|)).
GalerkinState galerkin_rhs(const GalerkinState& modes, double R, const ModelParams& params);

/// Classical fourth-order Runge-Kutta integration of galerkin_rhs with R = radius(t).
/// observer(t, state) is called at t = 0 and after every step.
GalerkinState integrate_galerkin(GalerkinState state, const std::function<double(double)>& radius,
                                 const ModelParams& params, double t_end, double dt,
                                 const std::function<void(double, const GalerkinState&)>& observer = {});

}  // namespace ksring
