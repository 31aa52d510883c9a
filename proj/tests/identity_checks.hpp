#pragma once

// Checks of the discrete summation-by-parts identities and interpolation
// inequalities for phi, psi and the difference operators. Shared by the unit
// tests and the acceptance runner.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ksring/field.hpp"
#include "ksring/operators.hpp"

namespace ksring::testing {

inline PeriodicField random_field(std::size_t J, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(J);
  for (auto& x : v) x = d(rng);
  return PeriodicField(std::move(v));
}

struct IdentityOutcome {
  int id = 0;
  bool ok = true;
  double worst = 0.0;  // largest relative defect (equalities) or smallest slack (inequalities)
};

// Equality a == b judged relative to `scale`, the magnitude of the terms involved.
inline void check_equal(IdentityOutcome& o, double a, double b, double scale, double tol) {
  const double rel = std::abs(a - b) / (scale > 0 ? scale : 1.0);
  o.worst = std::max(o.worst, rel);
  if (!(rel <= tol)) o.ok = false;
}

inline void check_strict(IdentityOutcome& o, double lhs, double rhs) {
  if (!(lhs < rhs)) o.ok = false;
}

/// Runs all nine statements on one triple (V, W, U).
inline std::vector<IdentityOutcome> identity_suite(const PeriodicField& V, const PeriodicField& W,
                                             const PeriodicField& U, double tol = 1e-12) {
  const auto J = static_cast<std::ptrdiff_t>(V.size());
  const double h = V.spacing();
  std::vector<IdentityOutcome> out(9);
  for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(i)].id = i + 1;

  // Magnitude of h * sum |x_i y_i|, the natural scale of an inner product.
  auto abs_inner = [&](const PeriodicField& a, const PeriodicField& b) {
    double s = 0.0;
    for (std::ptrdiff_t i = 0; i < J; ++i) s += std::abs(a[i] * b[i]);
    return h * s;
  };

  {  // (phi(V,W), W) = -h sum (V_{i+1} - V_{i-2}) W_i W_{i-1}
    double rhs = 0.0, scale = 0.0;
    for (std::ptrdiff_t i = 0; i < J; ++i) {
      const double t = (V[i + 1] - V[i - 2]) * W[i] * W[i - 1];
      rhs -= h * t;
      scale += h * std::abs(t);
    }
    const PeriodicField p = phi(V, W);
    check_equal(out[0], inner_h(p, W), rhs, scale + abs_inner(p, W), tol);
  }
  {  // (phi(V,V), W) = -h sum (V_i^2 + V_i V_{i+1} + V_{i+1}^2)(W_{i+1} - W_i)
    double rhs = 0.0, scale = 0.0;
    for (std::ptrdiff_t i = 0; i < J; ++i) {
      const double t = (V[i] * V[i] + V[i] * V[i + 1] + V[i + 1] * V[i + 1]) * (W[i + 1] - W[i]);
      rhs -= h * t;
      scale += h * std::abs(t);
    }
    const PeriodicField p = phi(V, V);
    check_equal(out[1], inner_h(p, W), rhs, scale + abs_inner(p, W), tol);
  }
  {  // (psi(V,W), U) = -h sum [V_i(W_{i+1} + 2W_i) + V_{i+1}(2W_{i+1} + W_i)](U_{i+1} - U_i)
    double rhs = 0.0, scale = 0.0;
    for (std::ptrdiff_t i = 0; i < J; ++i) {
      const double t = (V[i] * (W[i + 1] + 2 * W[i]) + V[i + 1] * (2 * W[i + 1] + W[i])) *
                       (U[i + 1] - U[i]);
      rhs -= h * t;
      scale += h * std::abs(t);
    }
    const PeriodicField p = psi(V, W);
    check_equal(out[2], inner_h(p, U), rhs, scale + abs_inner(p, U), tol);
  }
  {  // (phi(V,V), V) = 0
    const PeriodicField p = phi(V, V);
    check_equal(out[3], inner_h(p, V), 0.0, abs_inner(p, V), tol);
  }
  {  // phi(V,V) - phi(W,W) = psi(W, V-W) + phi(V-W, V-W), componentwise
    const PeriodicField D = V - W;
    const PeriodicField pv = phi(V, V), pw = phi(W, W);
    const PeriodicField lhs = pv - pw;
    const PeriodicField a = psi(W, D);
    const PeriodicField b = phi(D, D);
    double scale = 0.0;
    for (std::ptrdiff_t i = 0; i < J; ++i)
      scale = std::max({scale, std::abs(pv[i]), std::abs(pw[i]), std::abs(a[i]), std::abs(b[i])});
    for (std::ptrdiff_t i = 0; i < J; ++i) check_equal(out[4], lhs[i], a[i] + b[i], scale, tol);
  }
  const double n0 = norm_h(V), n1 = seminorm_1h(V), n2 = seminorm_2h(V);
  {
    const PeriodicField L = laplacian_h(V);
    check_equal(out[5], -inner_h(L, V), n1 * n1, abs_inner(L, V), tol);
  }
  {
    const PeriodicField B = bilaplacian_h(V);
    check_equal(out[6], inner_h(B, V), n2 * n2, abs_inner(B, V), tol);
  }
  check_strict(out[7], n1 * n1, n0 * n2);
  for (double eta : {0.1, 1.0, 10.0}) check_strict(out[8], n1 * n1, eta * n2 * n2 + n0 * n0 / (4 * eta));
  return out;
}

}  // namespace ksring::testing
