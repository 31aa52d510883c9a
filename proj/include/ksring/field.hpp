#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "ksring/errors.hpp"

namespace ksring {

/// Uniform grid on the circle [0, 2*pi): J nodes sigma_i = i*h.
struct GridSpec {
  std::size_t J = 0;
  double h = 0.0;

  static GridSpec with_points(std::size_t J);

  double sigma(std::ptrdiff_t i) const { return static_cast<double>(i) * h; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// J real samples on the periodic grid. Index access wraps around, so
/// field[i + J] == field[i] for every integer i.
class PeriodicField {
public:
  /// Throws DomainError unless J >= 8 and J is even.
  explicit PeriodicField(std::vector<double> values);

  static PeriodicField zeros(std::size_t J);
  static PeriodicField constant(std::size_t J, double c);

  /// Samples f(sigma_i) for i = 0..J-1.
  template <class F>
  static PeriodicField sample(std::size_t J, F&& f) {
    const GridSpec g = GridSpec::with_points(J);
    std::vector<double> v(J);
    for (std::size_t i = 0; i < J; ++i) v[i] = f(g.sigma(static_cast<std::ptrdiff_t>(i)));
    return PeriodicField(std::move(v));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return grid_.h; }
  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const& noexcept { return values_; }
  // A span into a temporary would dangle.
  std::span<const double> values() && = delete;

  double operator[](std::ptrdiff_t i) const noexcept {
    const auto J = static_cast<std::ptrdiff_t>(values_.size());
    std::ptrdiff_t r = i % J;
    if (r < 0) r += J;
    return values_[static_cast<std::size_t>(r)];
  }

  PeriodicField& operator+=(const PeriodicField& o);
  PeriodicField& operator-=(const PeriodicField& o);
  PeriodicField& operator*=(double s);

  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
  friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }
  friend PeriodicField operator*(PeriodicField a, double s) { return a *= s; }

  friend bool operator==(const PeriodicField& a, const PeriodicField& b) {
    return a.values_ == b.values_;
  }

private:
  std::vector<double> values_;
  GridSpec grid_;
};

void require_same_grid(const PeriodicField& a, const PeriodicField& b, const char* op);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> xs);

/// (h * sum V_i^2)^(1/2)
double norm_h(const PeriodicField& V);
/// h * sum V_i W_i
double inner_h(const PeriodicField& V, const PeriodicField& W);
/// Discrete H^1 seminorm from backward differences.
double seminorm_1h(const PeriodicField& V);
/// Discrete H^2 seminorm, (h * sum (Delta_h V)_i^2)^(1/2).
double seminorm_2h(const PeriodicField& V);
double max_abs(const PeriodicField& V);
/// h * sum V_i, the discrete integral over one period.
double discrete_integral(const PeriodicField& V);

/// |u_m| for m = 0..J/2 where u_m = (1/J) sum_i V_i exp(-i m sigma_i).
std::vector<double> mode_amplitudes(const PeriodicField& V);

}  // namespace ksring
