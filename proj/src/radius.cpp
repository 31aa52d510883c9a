#include "ksring/radius.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ksring/errors.hpp"

namespace ksring {

void ModelParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(delta) || !finite(alpha) || !finite(v_c) || !finite(R0))
    throw DomainError("model parameters must be finite");
  if (delta <= 0.0) throw DomainError("delta must be positive");
  if (alpha <= 1.0) throw DomainError("alpha must exceed 1 (expanding-circle regime)");
  if (v_c <= 0.0) throw DomainError("v_c must be positive");
  if (R0 <= 0.0) throw DomainError("R0 must be positive");
}

TimeGrid TimeGrid::from_steps(double T, std::size_t N) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive and finite");
  if (N == 0) throw DomainError("N must be positive");
  return TimeGrid{T / static_cast<double>(N), N, T};
}

TimeGrid TimeGrid::from_increment(double k, double T) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive and finite");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive and finite");
  const double steps = std::round(T / k);
  if (steps < 1.0) throw DomainError("T must be at least one step long");
  const auto N = static_cast<std::size_t>(steps);
  if (std::abs(static_cast<double>(N) * k - T) > 1e-12 * T)
    throw DomainError("T is not an integer multiple of k");
  return TimeGrid{k, N, T};
}

double radius_rate(double R, const ModelParams& params) {
  if (!(R > 0.0)) throw DomainError("radius_rate: R must be positive");
  return params.v_c + (params.alpha - 1.0) / R;
}

namespace {

// y - log(1 + y) without cancellation for small y.
double y_minus_log1p(double y) {
  if (std::abs(y) < 0.1) {
    double term = y;
    double sum = 0.0;
    for (int k = 2; k < 60; ++k) {
      term *= -y;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return y - std::log1p(y);
}

}  // namespace

RadiusLaw::RadiusLaw(const ModelParams& params) : RadiusLaw(params, false) {}

RadiusLaw::RadiusLaw(const ModelParams& params, bool frozen) : params_(params), frozen_(frozen) {
  params_.validate();
}

RadiusLaw RadiusLaw::frozen(const ModelParams& params, double R) {
  ModelParams p = params;
  p.R0 = R;
  return RadiusLaw(p, true);
}

double RadiusLaw::implicit_residual(double R, double t) const {
  const double a = params_.v_c * params_.R0 + params_.alpha - 1.0;
  const double y = params_.v_c * (R - params_.R0) / a;
  // (1/v_c){x - ((alpha-1)/v_c) log1p(y)} rewritten as a sum of two non-negative terms.
  const double lhs = (params_.v_c * params_.R0 * y + (params_.alpha - 1.0) * y_minus_log1p(y)) /
                     (params_.v_c * params_.v_c);
  return lhs - t;
}

double RadiusLaw::radius_at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("radius_at: t must be finite and >= 0");
  if (frozen_ || t == 0.0) return params_.R0;

  const double R0 = params_.R0;
  double lo = R0;
  double hi = R0 + radius_rate(R0, params_) * t + 1.0;
  // The implicit relation is increasing and convex in R, so Newton from the
  // upper bracket descends monotonically; bisection guards the rest.
  double R = hi;
  constexpr int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    const double f = implicit_residual(R, t);
    if (f > 0.0)
      hi = R;
    else
      lo = R;
    const double dfdR = 1.0 / radius_rate(R, params_);
    double next = R - f / dfdR;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - R);
    R = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * R || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * R) {
      if (std::abs(implicit_residual(R, t)) <= 1e-12 * std::max(1.0, t)) return R;
      break;
    }
  }
  if (std::abs(implicit_residual(R, t)) <= 1e-12 * std::max(1.0, t)) return R;
  throw NumericalError("radius_at: root finding did not converge at t = " + std::to_string(t));
}

double RadiusLaw::rate_at(double t) const {
  if (frozen_) return 0.0;
  return radius_rate(radius_at(t), params_);
}

double RadiusLaw::mean_decay_factor(double t) const {
  if (frozen_) return std::exp(-(params_.alpha - 1.0) * t / (params_.R0 * params_.R0));
  return radius_rate(radius_at(t), params_) / radius_rate(params_.R0, params_);
}

double radius_at_half_step(std::size_t n, const TimeGrid& grid, const RadiusLaw& law) {
  if (n >= grid.N)
    throw DomainError("radius_at_half_step: n = " + std::to_string(n) + " outside 0..N-1");
  return law.radius_at((static_cast<double>(n) + 0.5) * grid.k);
}

}  // namespace ksring
