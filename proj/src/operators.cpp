#include "ksring/operators.hpp"

#include <cmath>
#include <vector>

#include "ksring/params.hpp"

namespace ksring {

LinearOperatorCoefficients LinearOperatorCoefficients::at_radius(const ModelParams& params,
                                                                 double R) {
  if (!(R > 0.0)) throw DomainError("operator coefficients need R > 0");
  const double R2 = R * R;
  return {params.delta / (R2 * R2), (params.alpha - 1.0 + params.delta / R2) / R2,
          (params.alpha - 1.0) / R2};
}

double laplacian_symbol(double m, double h) noexcept {
  const double s = std::sin(0.5 * m * h);
  return 4.0 / (h * h) * s * s;
}

namespace {
template <class F>
PeriodicField pointwise(std::size_t J, F&& f) {
  std::vector<double> out(J);
  for (std::size_t i = 0; i < J; ++i) out[i] = f(static_cast<std::ptrdiff_t>(i));
  return PeriodicField(std::move(out));
}
}  // namespace

PeriodicField laplacian_h(const PeriodicField& V) {
  const double inv_h2 = 1.0 / (V.spacing() * V.spacing());
  return pointwise(V.size(), [&](auto i) { return (V[i - 1] - 2.0 * V[i] + V[i + 1]) * inv_h2; });
}

PeriodicField bilaplacian_h(const PeriodicField& V) { return laplacian_h(laplacian_h(V)); }

PeriodicField phi(const PeriodicField& V, const PeriodicField& W) {
  require_same_grid(V, W, "phi");
  return pointwise(V.size(),
                   [&](auto i) { return (V[i - 1] + V[i] + V[i + 1]) * (W[i + 1] - W[i - 1]); });
}

PeriodicField psi(const PeriodicField& V, const PeriodicField& W) {
  require_same_grid(V, W, "psi");
  return pointwise(V.size(), [&](auto i) {
    return -(2.0 * V[i - 1] + V[i]) * W[i - 1] + (V[i + 1] - V[i - 1]) * W[i] +
           (2.0 * V[i + 1] + V[i]) * W[i + 1];
  });
}

PeriodicField apply_L(const LinearOperatorCoefficients& c, const PeriodicField& V) {
  const double h2 = V.spacing() * V.spacing();
  const double a4 = c.c4 / (h2 * h2);
  const double a2 = c.c2 / h2;
  return pointwise(V.size(), [&](auto i) {
    const double outer = V[i - 2] + V[i + 2];
    const double inner = V[i - 1] + V[i + 1];
    const double centre = V[i];
    return a4 * (outer - 4.0 * inner + 6.0 * centre) + a2 * (inner - 2.0 * centre) + c.c0 * centre;
  });
}

}  // namespace ksring
