#pragma once

#include <cstddef>

#include "ksring/errors.hpp"
#include "ksring/params.hpp"

namespace ksring {

/// dR/dt = v_c + (alpha - 1) / R.  Throws DomainError for R <= 0.
double radius_rate(double R, const ModelParams& params);

/// Radius path R(t) of the expanding circle.
///
/// The expanding law solves dR/dt = v_c + (alpha-1)/R through its implicit
/// closed form
///   (1/v_c) { R - R0 - ((alpha-1)/v_c) log[(v_c R + alpha - 1)/(v_c R0 + alpha - 1)] } = t.
/// A frozen law keeps R = R0 for all t; it exists for modal cross-checks
/// where the radius has to be held fixed and is not a solution of the ODE.
class RadiusLaw {
public:
  /// Expanding law; params must satisfy alpha > 1, v_c > 0, R0 > 0.
  explicit RadiusLaw(const ModelParams& params);
  static RadiusLaw frozen(const ModelParams& params, double R);

  const ModelParams& params() const noexcept { return params_; }
  bool is_frozen() const noexcept { return frozen_; }

  double radius_at(double t) const;
  /// dR/dt at time t (zero for a frozen law).
  double rate_at(double t) const;

  /// H(t) with H' = -((alpha-1)/R(t)^2) H, H(0) = 1. For the expanding law
  /// H = Rdot(t)/Rdot(0), for a frozen law exp(-(alpha-1) t / R^2).
  double mean_decay_factor(double t) const;

  /// Left-hand side of the implicit relation minus t; zero at the solved R.
  double implicit_residual(double R, double t) const;

private:
  RadiusLaw(const ModelParams& params, bool frozen);

  ModelParams params_;
  bool frozen_ = false;
};

/// R(t) at t = (n + 1/2) k.
double radius_at_half_step(std::size_t n, const TimeGrid& grid, const RadiusLaw& law);

}  // namespace ksring
