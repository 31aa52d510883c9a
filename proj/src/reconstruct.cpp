#include "ksring/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ksring {

double interpolant_square_integral(const PeriodicField& V) {
  const std::size_t J = V.size();
  std::vector<double> cells(J);
  for (std::size_t i = 0; i < J; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    const double a = V[s];
    const double b = V[s + 1];
    cells[i] = a * a + a * b + b * b;
  }
  return V.spacing() / 3.0 * compensated_sum(cells);
}

std::vector<double> cumulative_integrals(const PeriodicField& V) {
  const std::size_t J = V.size();
  const double half_h = 0.5 * V.spacing();
  std::vector<double> C(J + 1, 0.0);
  double sum = 0.0;
  double carry = 0.0;  // Kahan compensation
  for (std::size_t i = 0; i < J; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    const double y = half_h * (V[s] + V[s + 1]) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    C[i + 1] = sum;
  }
  return C;
}

namespace {

constexpr double kSnap = 1e-12;

// Splits x >= 0 into a cell index in [0, cells-1] and a local coordinate in [0, 1].
std::pair<std::size_t, double> locate(double x, double width, std::size_t cells) {
  const double r = std::round(x / width);
  if (std::abs(x - r * width) <= kSnap * width) {
    const auto node = static_cast<std::size_t>(r);
    if (node >= cells) return {cells - 1, 1.0};
    return {node, 0.0};
  }
  auto cell = static_cast<std::size_t>(std::floor(x / width));
  if (cell >= cells) cell = cells - 1;
  return {cell, (x - static_cast<double>(cell) * width) / width};
}

}  // namespace

double interp_v(const Trajectory& traj, double sigma, double t) {
  const TimeGrid& tg = traj.time;
  if (!(t >= 0.0) || t > tg.T * (1.0 + kSnap))
    throw DomainError("interp_v: t = " + std::to_string(t) + " outside [0, T]");
  const double two_pi = 2.0 * std::numbers::pi;
  double s = std::fmod(sigma, two_pi);
  if (s < 0.0) s += two_pi;

  const auto [n, eta] = locate(std::min(t, tg.T), tg.k, tg.N);
  const auto [i, theta] = locate(s, traj.space.h, traj.space.J);
  const auto ii = static_cast<std::ptrdiff_t>(i);

  // Only touch snapshots that carry weight, so node queries work on strided trajectories.
  auto at_time = [&](std::size_t step, std::ptrdiff_t node) { return traj.at(step)[node]; };
  auto row = [&](std::ptrdiff_t node) {
    if (eta == 0.0) return at_time(n, node);
    if (eta == 1.0) return at_time(n + 1, node);
    return (1.0 - eta) * at_time(n, node) + eta * at_time(n + 1, node);
  };
  if (theta == 0.0) return row(ii);
  if (theta == 1.0) return row(ii + 1);
  return (1.0 - theta) * row(ii) + theta * row(ii + 1);
}

double cumulative_v(const Trajectory& traj, std::size_t i, std::size_t n) {
  if (i > traj.space.J)
    throw DomainError("cumulative_v: node index " + std::to_string(i) + " exceeds J");
  return cumulative_integrals(traj.at(n))[i];
}

double v_squared_integral(const Trajectory& traj, std::size_t n) {
  if (traj.has(n)) return interpolant_square_integral(traj.at(n));
  return traj.v_sq_integral.at(n);
}

MeanPath mean_path(const Trajectory& traj, const RadiusLaw& law, double I0) {
  const TimeGrid& tg = traj.time;
  const double v_c = law.params().v_c;
  MeanPath path{I0, std::vector<double>(tg.N + 1)};
  std::vector<double> H(tg.N + 1);
  std::vector<double> g(tg.N + 1);
  for (std::size_t n = 0; n <= tg.N; ++n) {
    H[n] = law.mean_decay_factor(tg.time(n));
    const double R = traj.radius[n];
    g[n] = traj.v_sq_integral[n] / (R * R * H[n]);
  }
  const double weight = v_c / (4.0 * std::numbers::pi);
  double integral = 0.0;
  path.values[0] = I0;
  for (std::size_t n = 1; n <= tg.N; ++n) {
    integral += 0.5 * tg.k * (g[n - 1] + g[n]);
    path.values[n] = H[n] * (I0 + weight * integral);
  }
  return path;
}

double mean_I(const Trajectory& traj, const RadiusLaw& law, double I0, std::size_t n) {
  if (n > traj.time.N) throw DomainError("mean_I: step outside the trajectory");
  return mean_path(traj, law, I0).values[n];
}

PeriodicField reconstruct_u(const PeriodicField& V, double mean_value) {
  const std::size_t J = V.size();
  const double h = V.spacing();
  const auto C = cumulative_integrals(V);
  // Each cell integral of the piecewise-quadratic antiderivative, in closed form.
  std::vector<double> cells(J);
  for (std::size_t i = 0; i < J; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    cells[i] = h * C[i] + h * h * (2.0 * V[s] + V[s + 1]) / 6.0;
  }
  const double offset = compensated_sum(cells) / (2.0 * std::numbers::pi);
  std::vector<double> U(J);
  for (std::size_t i = 0; i < J; ++i) U[i] = mean_value - offset + C[i];
  return PeriodicField(std::move(U));
}

PeriodicField reconstruct_u(const Trajectory& traj, const RadiusLaw& law, double I0,
                            std::size_t n) {
  return reconstruct_u(traj.at(n), mean_I(traj, law, I0, n));
}

std::vector<std::pair<double, double>> curve_points(const PeriodicField& U, double R) {
  const std::size_t J = U.size();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(J + 1);
  for (std::size_t i = 0; i < J; ++i) {
    const double s = U.grid().sigma(static_cast<std::ptrdiff_t>(i));
    const double r = R + U[static_cast<std::ptrdiff_t>(i)];
    pts.emplace_back(r * std::cos(s), r * std::sin(s));
  }
  pts.push_back(pts.front());
  return pts;
}

std::vector<std::pair<double, double>> curve_points(const Trajectory& traj, const RadiusLaw& law,
                                                    double I0, std::size_t n) {
  return curve_points(reconstruct_u(traj, law, I0, n), traj.radius.at(n));
}

}  // namespace ksring
