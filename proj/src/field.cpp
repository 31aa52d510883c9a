#include "ksring/field.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include "ksring/fourier.hpp"
#include "ksring/operators.hpp"

namespace ksring {

GridSpec GridSpec::with_points(std::size_t J) {
  if (J < 8 || J % 2 != 0)
    throw DomainError("grid needs an even number of points >= 8, got " + std::to_string(J));
  return GridSpec{J, 2.0 * std::numbers::pi / static_cast<double>(J)};
}

PeriodicField::PeriodicField(std::vector<double> values)
    : values_(std::move(values)), grid_(GridSpec::with_points(values_.size())) {}

PeriodicField PeriodicField::zeros(std::size_t J) { return PeriodicField(std::vector<double>(J, 0.0)); }

PeriodicField PeriodicField::constant(std::size_t J, double c) {
  return PeriodicField(std::vector<double>(J, c));
}

void require_same_grid(const PeriodicField& a, const PeriodicField& b, const char* op) {
  if (a.size() != b.size())
    throw DimensionError(std::string(op) + ": grid size mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) {
  require_same_grid(*this, o, "operator+");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& o) {
  require_same_grid(*this, o, "operator-");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

PeriodicField& PeriodicField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

namespace {
template <class F>
double grid_sum(std::size_t J, F&& term) {
  std::vector<double> terms(J);
  for (std::size_t i = 0; i < J; ++i) terms[i] = term(static_cast<std::ptrdiff_t>(i));
  return compensated_sum(terms);
}
}  // namespace

double norm_h(const PeriodicField& V) {
  return std::sqrt(V.spacing() * grid_sum(V.size(), [&](auto i) { return V[i] * V[i]; }));
}

double inner_h(const PeriodicField& V, const PeriodicField& W) {
  require_same_grid(V, W, "inner_h");
  return V.spacing() * grid_sum(V.size(), [&](auto i) { return V[i] * W[i]; });
}

double seminorm_1h(const PeriodicField& V) {
  const double h = V.spacing();
  return std::sqrt(h * grid_sum(V.size(), [&](auto i) {
                     const double d = (V[i] - V[i - 1]) / h;
                     return d * d;
                   }));
}

double seminorm_2h(const PeriodicField& V) { return norm_h(laplacian_h(V)); }

double max_abs(const PeriodicField& V) {
  double m = 0.0;
  for (double v : V.values()) m = std::max(m, std::abs(v));
  return m;
}

double discrete_integral(const PeriodicField& V) { return V.spacing() * compensated_sum(V.values()); }

std::vector<double> mode_amplitudes(const PeriodicField& V) {
  const std::size_t J = V.size();
  RealDft dft(J);
  std::vector<std::complex<double>> spec(J / 2 + 1);
  dft.forward(V.values(), spec);
  std::vector<double> amp(spec.size());
  const double scale = 1.0 / static_cast<double>(J);
  for (std::size_t m = 0; m < spec.size(); ++m) amp[m] = std::abs(spec[m]) * scale;
  return amp;
}

}  // namespace ksring
