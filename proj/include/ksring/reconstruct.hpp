#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ksring/field.hpp"
#include "ksring/radius.hpp"
#include "ksring/solver.hpp"

namespace ksring {

/// Integral over one period of the square of the piecewise-linear interpolant of V:
/// sum_i (h/3)(V_i^2 + V_i V_{i+1} + V_{i+1}^2).
double interpolant_square_integral(const PeriodicField& V);

/// Cumulative integral of the piecewise-linear interpolant from 0 to sigma_i,
/// for i = 0..J (J + 1 values).
std::vector<double> cumulative_integrals(const PeriodicField& V);

/// Bilinear interpolant of the stored nodes V_i^n, V_i^{n+1}, V_{i+1}^n, V_{i+1}^{n+1}.
/// sigma is taken modulo 2 pi. Throws DomainError for t outside [0, T] or
/// when a needed snapshot was not stored.
double interp_v(const Trajectory& traj, double sigma, double t);

/// h sum_{j<i} (V_j^n + V_{j+1}^n) / 2 for 0 <= i <= J.
double cumulative_v(const Trajectory& traj, std::size_t i, std::size_t n);

/// Exact period integral of the squared spatial interpolant at t^n.
double v_squared_integral(const Trajectory& traj, std::size_t n);

/// Mean height path I~(t^n), n = 0..N.
///
/// I~ solves dI/dt = -((alpha-1)/R^2) I + (v_c / (4 pi R^2)) Q(t), Q the
/// squared-interpolant integral, written with the homogeneous solution H of
/// the radius law (H = Rdot(t)/Rdot(0) for an expanding circle):
///   I~(t) = H(t) [ I0 + (v_c / 4 pi) int_0^t Q / (R^2 H) dtau ].
/// The time integral is the composite trapezoid rule over the step nodes.
struct MeanPath {
  double I0 = 0.0;
  std::vector<double> values;
};

MeanPath mean_path(const Trajectory& traj, const RadiusLaw& law, double I0);
double mean_I(const Trajectory& traj, const RadiusLaw& law, double I0, std::size_t n);

/// U_i = I~ - (1/2 pi) int_0^{2 pi} (int_0^sigma V~) dsigma + int_0^{sigma_i} V~,
/// all sigma-integrals exact for the piecewise-linear interpolant.
PeriodicField reconstruct_u(const PeriodicField& V, double mean_value);
PeriodicField reconstruct_u(const Trajectory& traj, const RadiusLaw& law, double I0,
                            std::size_t n);

/// (R + U_i)(cos sigma_i, sin sigma_i) for i = 0..J-1 followed by the i = 0 point again.
std::vector<std::pair<double, double>> curve_points(const PeriodicField& U, double R);
std::vector<std::pair<double, double>> curve_points(const Trajectory& traj, const RadiusLaw& law,
                                                    double I0, std::size_t n);

}  // namespace ksring
