#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "ksring/solver.hpp"
#include "identity_checks.hpp"

using namespace ksring;
using ksring::testing::random_field;

namespace {

const ModelParams fig2{4.0, 1.5, 0.001, 6.0};

Eigen::MatrixXd dense_L(std::size_t J, double h, const LinearOperatorCoefficients& c) {
  const auto n = static_cast<Eigen::Index>(J);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    D(i, i) = -2.0 / (h * h);
    D(i, (i + 1) % n) += 1.0 / (h * h);
    D(i, (i + n - 1) % n) += 1.0 / (h * h);
  }
  return c.c4 * D * D + c.c2 * D + c.c0 * Eigen::MatrixXd::Identity(n, n);
}

Eigen::VectorXd vec(const PeriodicField& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = f[static_cast<std::ptrdiff_t>(i)];
  return v;
}

double max_diff(const PeriodicField& a, const Eigen::VectorXd& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[static_cast<std::ptrdiff_t>(i)] - b(static_cast<Eigen::Index>(i))));
  return d;
}

// (1/k) I + (1/2) L at R(t^n + k/2), with R taken from the radius law directly.
Eigen::MatrixXd system_matrix(const RadiusLaw& law, const TimeGrid& tg, const GridSpec& g, std::size_t n,
                              double& R_half) {
  R_half = law.radius_at((static_cast<double>(n) + 0.5) * tg.k);
  const auto c = LinearOperatorCoefficients::at_radius(law.params(), R_half);
  const auto J = static_cast<Eigen::Index>(g.J);
  return Eigen::MatrixXd::Identity(J, J) / tg.k + 0.5 * dense_L(g.J, g.h, c);
}

PeriodicField mode_field(std::size_t J, int m, double amp) {
  return PeriodicField::sample(J, [=](double s) { return -amp * m * std::sin(m * s); });
}

}  // namespace

TEST_CASE("admissibility report") {
  const TimeGrid tg = TimeGrid::from_increment(0.01, 100.0);
  const RadiusLaw law(fig2);
  const AdmissibilityReport a = check_admissibility(fig2, tg, law);
  CHECK(a.radius_floor == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
  CHECK(a.radius_ok);
  CHECK(a.R_T == doctest::Approx(law.radius_at(100.0)).epsilon(1e-15));
  const double gap = 0.5 - 4.0 / (a.R_T * a.R_T);
  CHECK(a.step_bound == doctest::Approx(32.0 / (gap * gap)).epsilon(1e-14));
  CHECK(a.step_bound > 128.0);  // tends to 8 delta/(alpha-1)^2 = 128 from above
  CHECK(a.pass());
  CHECK_FALSE(a.k_over_h_quarter.has_value());

  ModelParams small = fig2;
  small.R0 = 2.0;
  const AdmissibilityReport b = check_admissibility(small, tg, RadiusLaw(small));
  CHECK_FALSE(b.radius_ok);
  CHECK_FALSE(b.pass());

  const TimeGrid big = TimeGrid::from_increment(500.0, 1000.0);
  CHECK_FALSE(check_admissibility(fig2, big, law).step_ok);

  const auto with_space = check_admissibility(fig2, tg, law, GridSpec::with_points(64));
  REQUIRE(with_space.k_over_h_quarter.has_value());
  CHECK(*with_space.k_over_h_quarter == doctest::Approx(0.01 / std::pow(2 * std::numbers::pi / 64, 0.25)));
}

TEST_CASE("modal denominators stay positive on admissible steps") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams p;
    p.delta = 0.5 + 8 * U(rng);
    p.alpha = 1.05 + U(rng);
    p.v_c = 0.001 + 0.1 * U(rng);
    p.R0 = std::sqrt(p.delta / (p.alpha - 1)) * (1.01 + 5 * U(rng));
    const RadiusLaw law(p);
    const double T = 1 + 50 * U(rng);
    const double R_T = law.radius_at(T);
    const double gap = p.alpha - 1 - p.delta / (R_T * R_T);
    const double bound = 8 * p.delta / (gap * gap);
    const double k = bound * (0.05 + 0.9 * U(rng));
    const GridSpec g = GridSpec::with_points(8u << (trial % 6));
    CirculantSolver solver(g);
    for (double R : {p.R0, 0.5 * (p.R0 + R_T), R_T}) {
      const auto den = solver.modal_denominators(LinearOperatorCoefficients::at_radius(p, R), k);
      for (double d : den) CHECK(d > 0.0);
    }
  }
}

TEST_CASE("circulant solve") {
  const GridSpec g = GridSpec::with_points(32);
  CirculantSolver solver(g);
  const auto c = LinearOperatorCoefficients::at_radius(fig2, 6.0);
  const double k = 0.01;

  const PeriodicField zero = solver.solve(PeriodicField::zeros(32), c, k, 1e-10);
  for (double x : zero.values()) CHECK(x == 0.0);

  const auto den = solver.modal_denominators(c, k);
  for (int m : {0, 1, 2, 9, 16}) {
    const PeriodicField rhs = PeriodicField::sample(32, [m](double s) { return std::cos(m * s); });
    const PeriodicField X = solver.solve(rhs, c, k, 1e-10);
    for (std::ptrdiff_t i = 0; i < 32; ++i)
      CHECK(std::abs(X[i] - rhs[i] / den[static_cast<std::size_t>(m)]) <= 1e-12 * std::abs(1 / den[static_cast<std::size_t>(m)]));
  }

  std::mt19937_64 rng(32);
  const PeriodicField rhs = random_field(32, rng);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(32, 32) / k + 0.5 * dense_L(32, g.h, c);
  const Eigen::VectorXd x = A.partialPivLu().solve(vec(rhs));
  CHECK(max_diff(solver.solve(rhs, c, k, 1e-10), x) <= 1e-10 * x.cwiseAbs().maxCoeff());

  // Mode 2 has a negative symbol at R = 6, so a huge k makes its denominator negative.
  try {
    solver.solve(rhs, c, 1e4, 1e-10);
    FAIL("expected a NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("mode") != std::string::npos);
  }
}

TEST_CASE("newton first step against a dense solve") {
  const GridSpec g = GridSpec::with_points(8);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 1.0);
  const RadiusLaw law(fig2);
  StepContext ctx(law, tg, g);

  const PeriodicField zero = newton_first_step(PeriodicField::zeros(8), ctx);
  for (double x : zero.values()) CHECK(x == 0.0);

  std::mt19937_64 rng(33);
  const PeriodicField v0 = random_field(8, rng);
  double R;
  const Eigen::MatrixXd A = system_matrix(law, tg, g, 0, R);
  const auto c = LinearOperatorCoefficients::at_radius(fig2, R);
  const Eigen::VectorXd b = vec(v0) / tg.k - 0.5 * dense_L(8, g.h, c) * vec(v0) +
                            fig2.v_c / (6 * g.h * R * R) * vec(phi(v0, v0));
  const Eigen::VectorXd x = A.partialPivLu().solve(b);
  const PeriodicField W = newton_first_step(v0, ctx);
  CHECK(max_diff(W, x) <= 1e-10 * x.cwiseAbs().maxCoeff());
  CHECK((A * vec(W) - b).norm() <= 1e-10 * b.norm());
}

TEST_CASE("newton iterate against a dense solve") {
  const GridSpec g = GridSpec::with_points(8);
  const TimeGrid tg = TimeGrid::from_increment(0.05, 1.0);
  const ModelParams p{4.0, 1.28, 0.1, 60.0};
  const RadiusLaw law(p);
  StepContext ctx(law, tg, g);

  const PeriodicField Z = PeriodicField::zeros(8);
  const PeriodicField zero = newton_iterate(Z, Z, Z, 3, ctx);
  for (double x : zero.values()) CHECK(x == 0.0);

  std::mt19937_64 rng(34);
  for (std::size_t n : {0u, 7u, 19u}) {
    const PeriodicField Vn = random_field(8, rng), Vhat = random_field(8, rng), Wj = random_field(8, rng);
    double R;
    const Eigen::MatrixXd A = system_matrix(law, tg, g, n, R);
    const auto c = LinearOperatorCoefficients::at_radius(p, R);
    const PeriodicField base = Vn + Vhat;
    const Eigen::VectorXd b = vec(Vn) / tg.k - 0.5 * dense_L(8, g.h, c) * vec(Vn) +
                              p.v_c / (24 * g.h * R * R) * (vec(psi(base, Wj - Vhat)) + vec(phi(base, base)));
    const Eigen::VectorXd x = A.partialPivLu().solve(b);
    CHECK(max_diff(newton_iterate(Vn, Vhat, Wj, n, ctx), x) <= 1e-10 * x.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("extrapolation") {
  std::mt19937_64 rng(35);
  const PeriodicField a = random_field(8, rng), b = random_field(8, rng);
  CHECK(extrapolate(a, a) == a);
  CHECK(extrapolate(a, PeriodicField::zeros(8)) == 2.0 * a);
  // Linear in time: V(t) = a + t b sampled at t = 1, 2 extrapolates to t = 3 exactly (to rounding).
  const PeriodicField e = extrapolate(a + 2.0 * b, a + b);
  const PeriodicField exact = a + 3.0 * b;
  for (std::ptrdiff_t i = 0; i < 8; ++i) CHECK(e[i] == doctest::Approx(exact[i]).epsilon(1e-14).scale(1.0));
}

TEST_CASE("crank-nicolson residual") {
  const GridSpec g = GridSpec::with_points(8);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 1.0);
  const RadiusLaw law(fig2);
  StepContext ctx(law, tg, g);
  const PeriodicField Z = PeriodicField::zeros(8);
  CHECK(norm_h(cn_residual(Z, Z, 0, ctx)) == 0.0);

  std::mt19937_64 rng(36);
  const PeriodicField A = random_field(8, rng), B = random_field(8, rng);
  const std::size_t n = 4;
  const double R = law.radius_at(4.5 * tg.k);
  const auto c = LinearOperatorCoefficients::at_radius(fig2, R);
  const PeriodicField mid = 0.5 * (A + B);
  const PeriodicField Lm = apply_L(c, mid);
  const PeriodicField pm = phi(mid, mid);
  const PeriodicField r = cn_residual(A, B, n, ctx);
  for (std::ptrdiff_t i = 0; i < 8; ++i) {
    const double oracle = (B[i] - A[i]) / tg.k + Lm[i] - fig2.v_c / (6 * g.h * R * R) * pm[i];
    CHECK(std::abs(r[i] - oracle) <= 1e-13 * (std::abs(B[i] - A[i]) / tg.k + 1));
  }
}

TEST_CASE("crank-nicolson step") {
  const GridSpec g = GridSpec::with_points(64);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 1.0);
  const RadiusLaw law(fig2);
  StepContext ctx(law, tg, g);

  const PeriodicField zero = cn_step(PeriodicField::zeros(64), 0, ctx, 1e-12);
  for (double x : zero.values()) CHECK(x == 0.0);

  // Infinitesimal single-mode data evolves by the linear amplification factor.
  for (double eps : {1e-6, 1e-8}) {
    const PeriodicField V0 = mode_field(64, 2, eps);
    const PeriodicField V1 = cn_step(V0, 0, ctx, 1e-13);
    const double mu = ctx.half_coeffs(0).symbol(laplacian_symbol(2, g.h));
    const double factor = (1 - tg.k * mu / 2) / (1 + tg.k * mu / 2);
    const double ratio = inner_h(V1, V0) / inner_h(V0, V0);
    CHECK(ratio == doctest::Approx(factor).epsilon(eps > 1e-7 ? 1e-3 : 1e-4));
  }

  // Newton stationarity: iterating from the exact CN solution with Vhat = W reproduces it.
  const PeriodicField V0 = mode_field(64, 3, 0.3) + mode_field(64, 5, 0.2);
  const PeriodicField V1 = cn_step(V0, 0, ctx, 1e-14);
  CHECK(relative_cn_residual(V0, V1, 0, ctx) <= 1e-14);
  const PeriodicField again = newton_iterate(V0, V1, V1, 0, ctx);
  CHECK(norm_h(again - V1) <= 1e-10 * norm_h(V1));
}

TEST_CASE("mean recursion") {
  const GridSpec g = GridSpec::with_points(64);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 2.0);
  const RadiusLaw law(fig2);
  const PeriodicField v0 =
      mode_field(64, 2, 0.1) + mode_field(64, 3, 0.1) + PeriodicField::constant(64, 1.0 / (2 * std::numbers::pi));
  for (Scheme s : {Scheme::Newton, Scheme::CrankNicolson}) {
    StepContext ctx(law, tg, g);
    const Trajectory tr = run(ctx, v0, s);
    CHECK(tr.mean[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(tr.warnings.empty());
    for (std::size_t n = 0; n < tg.N; ++n) {
      const double R = law.radius_at((n + 0.5) * tg.k);
      const double a = tg.k * (fig2.alpha - 1);
      const double factor = (2 * R * R - a) / (2 * R * R + a);
      CHECK(mean_recursion_factor(n, ctx) == doctest::Approx(factor).epsilon(1e-15));
      CHECK(std::abs(tr.mean[n + 1] - factor * tr.mean[n]) <= 1e-12 * std::abs(tr.mean[n]));
    }
  }
}

TEST_CASE("zero initial data stays zero") {
  const GridSpec g = GridSpec::with_points(16);
  const TimeGrid tg = TimeGrid::from_increment(0.1, 1.0);
  const Trajectory tr = run(fig2, tg, g, SolverConfig{}, PeriodicField::zeros(16));
  CHECK(tr.snapshots.size() == tg.N + 1);
  for (std::size_t n = 0; n <= tg.N; ++n) {
    CHECK(tr.mean[n] == 0.0);
    CHECK(max_abs(tr.at(n)) == 0.0);
  }
  CHECK(tr.max_abs_mean() == 0.0);
}

TEST_CASE("snapshot stride keeps the first and last steps") {
  const GridSpec g = GridSpec::with_points(16);
  const TimeGrid tg = TimeGrid::from_increment(0.1, 1.0);
  SolverConfig sc;
  sc.snapshot_stride = 3;
  const Trajectory tr = run(fig2, tg, g, sc, mode_field(16, 2, 0.1));
  CHECK(tr.steps == std::vector<std::size_t>{0, 3, 6, 9, 10});
  CHECK(tr.has(6));
  CHECK_FALSE(tr.has(5));
  CHECK_THROWS_AS(tr.at(5), DomainError);
  CHECK(tr.radius.size() == 11);
  CHECK(tr.mean.size() == 11);
}

TEST_CASE("newton tracks the crank-nicolson solution") {
  const GridSpec g = GridSpec::with_points(128);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 5.0);
  const PeriodicField v0 = mode_field(128, 2, 0.1) + mode_field(128, 3, 0.1) + mode_field(128, 4, 0.1);
  const Trajectory a = run(fig2, tg, g, SolverConfig{}, v0, Scheme::Newton);
  const Trajectory b = run(fig2, tg, g, SolverConfig{}, v0, Scheme::CrankNicolson);
  double worst = 0.0;
  for (std::size_t n = 0; n <= tg.N; ++n) worst = std::max(worst, norm_h(a.at(n) - b.at(n)));
  // Far below the O(k^2 + h^2) discretization error of either scheme.
  CHECK(worst <= 1e-8);
  // The gap is set by the linearly implicit first step and only decays afterwards.
  CHECK(norm_h(a.at(1) - b.at(1)) == doctest::Approx(worst).epsilon(1e-12));

  // Three iterations per step already reach the residual-controlled iterate.
  SolverConfig tol;
  tol.newton_residual_tol = 1e-13;
  const Trajectory c = run(fig2, tg, g, tol, v0, Scheme::Newton);
  CHECK(norm_h(c.final_field() - a.final_field()) <= 1e-13);
}

TEST_CASE("perturbed trajectories separate at a bounded rate") {
  const GridSpec g = GridSpec::with_points(256);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 10.0);
  const PeriodicField v0 =
      mode_field(256, 2, 0.1) + mode_field(256, 3, 0.1) + mode_field(256, 4, 0.1) + mode_field(256, 5, 0.1);
  const Trajectory a = run(fig2, tg, g, SolverConfig{}, v0, Scheme::CrankNicolson);
  for (int m : {2, 7}) {
    const Trajectory b = run(fig2, tg, g, SolverConfig{}, v0 + mode_field(256, m, 1e-3), Scheme::CrankNicolson);
    double c = -1e300;
    for (std::size_t n = 0; n < tg.N; ++n) {
      const double e0 = norm_h(a.at(n) - b.at(n)), e1 = norm_h(a.at(n + 1) - b.at(n + 1));
      c = std::max(c, (e1 / e0 - 1.0) / tg.k);
    }
    INFO("perturbed mode " << m << ", fitted c = " << c);
    CHECK(c <= 10.0);
  }
}

TEST_CASE("runs are deterministic") {
  const GridSpec g = GridSpec::with_points(64);
  const TimeGrid tg = TimeGrid::from_increment(0.01, 1.0);
  const PeriodicField v0 = mode_field(64, 2, 0.1) + mode_field(64, 5, 0.1);
  const Trajectory a = run(fig2, tg, g, SolverConfig{}, v0);
  const Trajectory b = run(fig2, tg, g, SolverConfig{}, v0);
  CHECK(a.snapshots == b.snapshots);
  CHECK(a.mean == b.mean);
}

TEST_CASE("step failure carries the step index") {
  const GridSpec g = GridSpec::with_points(32);
  const TimeGrid tg = TimeGrid::from_increment(0.5, 5.0);
  ModelParams p = fig2;
  p.v_c = 1.0;
  SolverConfig sc;
  sc.max_iters = 5;
  try {
    run(p, tg, g, sc, mode_field(32, 3, 1e3), Scheme::CrankNicolson);
    FAIL("expected StepFailure");
  } catch (const StepFailure& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= tg.N);
  }
}

TEST_CASE("solver configuration validation") {
  SolverConfig sc;
  CHECK_NOTHROW(sc.validate());
  sc.newton_iters = 0;
  CHECK_THROWS_AS(sc.validate(), DomainError);
  sc = SolverConfig{};
  sc.linear_tol = 0.0;
  CHECK_THROWS_AS(sc.validate(), DomainError);
}
