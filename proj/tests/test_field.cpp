#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ksring/field.hpp"
#include "identity_checks.hpp"

using namespace ksring;
using ksring::testing::random_field;
constexpr double pi = std::numbers::pi;

TEST_CASE("grid size must be even and at least 8") {
  CHECK_THROWS_AS(GridSpec::with_points(6), DomainError);
  CHECK_THROWS_AS(GridSpec::with_points(9), DomainError);
  CHECK_THROWS_AS(PeriodicField(std::vector<double>(2, 1.0)), DomainError);
  const GridSpec g = GridSpec::with_points(16);
  CHECK(g.h == doctest::Approx(2 * pi / 16).epsilon(1e-15));
}

TEST_CASE("indexing wraps around the period") {
  const PeriodicField f = PeriodicField::sample(8, [](double s) { return s; });
  CHECK(f[8] == f[0]);
  CHECK(f[-1] == f[7]);
  CHECK(f[-17] == f[7]);
}

TEST_CASE("arithmetic refuses mismatched grids") {
  PeriodicField a = PeriodicField::zeros(8);
  CHECK_THROWS_AS(a += PeriodicField::zeros(16), DimensionError);
}

TEST_CASE("norm_h") {
  CHECK(norm_h(PeriodicField::zeros(32)) == 0.0);
  CHECK(norm_h(PeriodicField::constant(32, 3.0)) == doctest::Approx(3.0 * std::sqrt(2 * pi)).epsilon(1e-14));

  std::mt19937_64 rng(11);
  const PeriodicField V = random_field(16, rng);
  long double s = 0;  // loop oracle in extended precision
  for (std::size_t i = 0; i < 16; ++i) s += static_cast<long double>(V[static_cast<std::ptrdiff_t>(i)]) * V[static_cast<std::ptrdiff_t>(i)];
  const double oracle = std::sqrt(static_cast<double>(s) * V.spacing());
  CHECK(std::abs(norm_h(V) - oracle) <= 1e-14 * oracle);
}

TEST_CASE("inner_h") {
  std::mt19937_64 rng(12);
  const PeriodicField V = random_field(8, rng), W = random_field(8, rng);
  CHECK(inner_h(V, PeriodicField::zeros(8)) == 0.0);
  CHECK(inner_h(V, V) == doctest::Approx(norm_h(V) * norm_h(V)).epsilon(1e-14));
  double oracle = 0;
  for (int i = 0; i < 8; ++i) oracle += V[i] * W[i];
  oracle *= V.spacing();
  CHECK(std::abs(inner_h(V, W) - oracle) <= 1e-14 * std::max(1.0, std::abs(oracle)));
}

TEST_CASE("seminorms against loop oracles") {
  CHECK(seminorm_1h(PeriodicField::constant(16, 2.0)) == 0.0);
  CHECK(seminorm_2h(PeriodicField::constant(16, 2.0)) == 0.0);

  auto semi1 = [](const PeriodicField& V) {
    double s = 0;
    const double h = V.spacing();
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(V.size()); ++i) {
      const double d = (V[i] - V[i - 1]) / h;
      s += d * d;
    }
    return std::sqrt(h * s);
  };
  auto semi2 = [](const PeriodicField& V) {
    double s = 0;
    const double h = V.spacing();
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(V.size()); ++i) {
      const double d = (V[i - 1] - 2 * V[i] + V[i + 1]) / (h * h);
      s += d * d;
    }
    return std::sqrt(h * s);
  };

  std::vector<double> alt(8);
  for (int i = 0; i < 8; ++i) alt[static_cast<std::size_t>(i)] = i % 2 ? -1.0 : 1.0;
  const PeriodicField A(alt);
  CHECK(seminorm_1h(A) == doctest::Approx(semi1(A)).epsilon(1e-14));
  // Every backward difference is +-2/h: h * 8 * 4/h^2 = 32/h.
  CHECK(seminorm_1h(A) == doctest::Approx(std::sqrt(32.0 / A.spacing())).epsilon(1e-14));

  for (int m : {1, 3, 7}) {
    const PeriodicField c = PeriodicField::sample(64, [m](double s) { return std::cos(m * s); });
    CHECK(std::abs(seminorm_1h(c) - semi1(c)) <= 1e-13 * semi1(c));
    CHECK(std::abs(seminorm_2h(c) - semi2(c)) <= 1e-12 * semi2(c));
  }

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const PeriodicField V = random_field(32, rng);
    const double n1 = seminorm_1h(V);
    CHECK(n1 * n1 <= norm_h(V) * seminorm_2h(V));
  }
}

TEST_CASE("compensated summation recovers cancelled terms") {
  const std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(xs) == 2.0);
}

TEST_CASE("max_abs and discrete_integral") {
  const PeriodicField c = PeriodicField::sample(32, [](double s) { return 2 + std::sin(s); });
  CHECK(discrete_integral(c) == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(max_abs(PeriodicField::constant(8, -3.5)) == 3.5);
}

TEST_CASE("mode amplitudes") {
  const auto z = mode_amplitudes(PeriodicField::zeros(16));
  for (double a : z) CHECK(a == 0.0);

  const PeriodicField c3 = PeriodicField::sample(32, [](double s) { return std::cos(3 * s); });
  const auto a = mode_amplitudes(c3);
  REQUIRE(a.size() == 17);
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (m == 3)
      CHECK(a[m] == doctest::Approx(0.5).epsilon(1e-13));
    else
      CHECK(a[m] <= 1e-12);
  }

  const auto c = mode_amplitudes(PeriodicField::constant(16, -2.0));
  CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t m = 1; m < c.size(); ++m) CHECK(c[m] <= 1e-15);

  // Direct DFT oracle and Parseval on random data.
  std::mt19937_64 rng(14);
  const PeriodicField V = random_field(16, rng);
  const auto amp = mode_amplitudes(V);
  double parseval = 0.0;
  for (std::size_t m = 0; m <= 8; ++m) {
    std::complex<double> s = 0;
    for (int i = 0; i < 16; ++i) s += V[i] * std::polar(1.0, -static_cast<double>(m) * V.grid().sigma(i));
    CHECK(amp[m] == doctest::Approx(std::abs(s) / 16).epsilon(1e-12));
    parseval += (m == 0 || m == 8 ? 1.0 : 2.0) * amp[m] * amp[m];
  }
  CHECK(2 * pi * parseval == doctest::Approx(norm_h(V) * norm_h(V)).epsilon(1e-13));
}
