#include "ksring/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ksring/errors.hpp"
#include "ksring/fourier.hpp"

namespace ksring {

namespace {

// The modal formula itself, valid for any integer m (used for m = 0 and for
// the symmetry property).
double modal_rate(double m, double R, const ModelParams& p) {
  const double R2 = R * R;
  const double m2 = m * m;
  return -p.delta * m2 * m2 / (R2 * R2) + m2 / R2 * (p.alpha - 1.0 + p.delta / R2) -
         (p.alpha - 1.0) / R2;
}

}  // namespace

double lambda_m(int m, double R, const ModelParams& params) {
  if (m < 1) throw DomainError("lambda_m: m must be >= 1 (lambda_{-m} = lambda_m)");
  if (!(R > 0.0)) throw DomainError("lambda_m: R must be positive");
  if (m == 1) return 0.0;
  return modal_rate(static_cast<double>(m), R, params);
}

double neutral_delta(int m, double R, const ModelParams& params) {
  if (m < 2) throw DomainError("neutral_delta: m must be >= 2");
  if (!(R >= 0.0)) throw DomainError("neutral_delta: R must be non-negative");
  return (params.alpha - 1.0) * R * R / (static_cast<double>(m) * m);
}

double critical_radius(const ModelParams& params) {
  if (!(params.alpha > 1.0) || !(params.delta > 0.0))
    throw DomainError("critical_radius needs alpha > 1 and delta > 0");
  return 2.0 * std::sqrt(params.delta / (params.alpha - 1.0));
}

int dominant_mode(const PeriodicField& field) {
  const auto amp = mode_amplitudes(field);
  int best = 1;
  for (std::size_t m = 2; m < amp.size(); ++m)
    if (amp[m] > amp[static_cast<std::size_t>(best)] * (1.0 + 1e-12)) best = static_cast<int>(m);
  return best;
}

SpectralReport spectral_report(double R, const ModelParams& params, int m_max,
                               const PeriodicField* probe) {
  if (m_max < 2) throw DomainError("spectral_report: m_max must be >= 2");
  SpectralReport rep;
  rep.R = R;
  rep.R_star = critical_radius(params);
  for (int m = 1; m <= m_max; ++m) {
    const double l = lambda_m(m, R, params);
    rep.lambda[m] = l;
    if (m >= 2 && l > 0.0) rep.unstable_modes.push_back(m);
  }
  for (int m : rep.unstable_modes) {
    if (!rep.predicted_dominant || rep.lambda[m] > rep.lambda[*rep.predicted_dominant] + 1e-12)
      rep.predicted_dominant = m;
  }
  if (probe) rep.measured_dominant = dominant_mode(*probe);
  return rep;
}

// ----------------------------------------------------------------- Galerkin

GalerkinState::GalerkinState(int m_max) : m_max_(m_max), u_(static_cast<std::size_t>(2 * m_max + 1)) {
  if (m_max < 1) throw DomainError("GalerkinState: m_max must be >= 1");
}

GalerkinState GalerkinState::from_field(const PeriodicField& U, int m_max) {
  const std::size_t J = U.size();
  if (static_cast<std::size_t>(m_max) > J / 2)
    throw DomainError("GalerkinState::from_field: m_max exceeds J/2");
  RealDft dft(J);
  std::vector<std::complex<double>> spec(J / 2 + 1);
  dft.forward(U.values(), spec);
  GalerkinState s(m_max);
  const double scale = 1.0 / static_cast<double>(J);
  for (int m = 0; m <= m_max; ++m) {
    s[m] = spec[static_cast<std::size_t>(m)] * scale;
    if (m > 0) s[-m] = std::conj(s[m]);
  }
  return s;
}

double GalerkinState::reality_defect() const {
  double d = 0.0;
  for (int m = 0; m <= m_max_; ++m) d = std::max(d, std::abs((*this)[-m] - std::conj((*this)[m])));
  return d;
}

double GalerkinState::max_amplitude() const {
  double a = 0.0;
  for (const auto& z : u_) a = std::max(a, std::abs(z));
  return a;
}

GalerkinState& GalerkinState::axpy(double a, const GalerkinState& x) {
  if (x.m_max_ != m_max_) throw DimensionError("GalerkinState::axpy: truncation mismatch");
  for (std::size_t i = 0; i < u_.size(); ++i) u_[i] += a * x.u_[i];
  return *this;
}

GalerkinState galerkin_rhs(const GalerkinState& modes, double R, const ModelParams& params) {
  if (!(R > 0.0)) throw DomainError("galerkin_rhs: R must be positive");
  const int M = modes.m_max();
  if (modes.reality_defect() > 1e-12 * std::max(1.0, modes.max_amplitude()))
    throw DomainError("galerkin_rhs: amplitudes violate u_{-m} = conj(u_m)");

  GalerkinState out(M);
  const double coupling = params.v_c / (2.0 * R * R);
  for (int m = -M; m <= M; ++m) {
    std::complex<double> conv = 0.0;
    const int lo = std::max(-M, m - M);
    const int hi = std::min(M, m + M);
    for (int m1 = lo; m1 <= hi; ++m1) {
      const int m2 = m - m1;
      if (m1 == 0 || m2 == 0) continue;
      conv += static_cast<double>(m1) * static_cast<double>(m2) * modes[m1] * modes[m2];
    }
    const double rate = m == 0 ? modal_rate(0.0, R, params) : lambda_m(std::abs(m), R, params);
    out[m] = rate * modes[m] - coupling * conv;
  }
  return out;
}

GalerkinState integrate_galerkin(GalerkinState state, const std::function<double(double)>& radius,
                                 const ModelParams& params, double t_end, double dt,
                                 const std::function<void(double, const GalerkinState&)>& observer) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw DomainError("integrate_galerkin: need dt > 0, t_end >= 0");
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double step = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
  if (observer) observer(0.0, state);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * step;
    const GalerkinState k1 = galerkin_rhs(state, radius(t), params);
    const GalerkinState k2 = galerkin_rhs(GalerkinState(state).axpy(0.5 * step, k1), radius(t + 0.5 * step), params);
    const GalerkinState k3 = galerkin_rhs(GalerkinState(state).axpy(0.5 * step, k2), radius(t + 0.5 * step), params);
    const GalerkinState k4 = galerkin_rhs(GalerkinState(state).axpy(step, k3), radius(t + step), params);
    state.axpy(step / 6.0, k1).axpy(step / 3.0, k2).axpy(step / 3.0, k3).axpy(step / 6.0, k4);
    if (observer) observer(static_cast<double>(n + 1) * step, state);
  }
  return state;
}

}  // namespace ksring
