#include "ksring/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ksring/reconstruct.hpp"

namespace ksring {

void SolverConfig::validate() const {
  if (newton_iters < 1) throw DomainError("solver.jn must be >= 1");
  if (!(linear_tol > 0.0)) throw DomainError("solver.linear_tol must be positive");
  if (!(reference_tol > 0.0)) throw DomainError("solver.reference_tol must be positive");
  if (newton_residual_tol < 0.0) throw DomainError("solver.newton_residual_tol must be >= 0");
  if (max_iters < 1) throw DomainError("solver.max_iters must be >= 1");
  if (snapshot_stride < 1) throw DomainError("output.stride must be >= 1");
}

AdmissibilityReport check_admissibility(const ModelParams& params, const TimeGrid& grid,
                                        const RadiusLaw& law, std::optional<GridSpec> space) {
  AdmissibilityReport r;
  const double am1 = params.alpha - 1.0;
  r.radius_floor = std::sqrt(params.delta / am1);
  r.R0 = params.R0;
  r.radius_ok = params.R0 > r.radius_floor;
  r.R_T = law.radius_at(grid.T);
  const double gap = am1 - params.delta / (r.R_T * r.R_T);
  r.step_bound = gap == 0.0 ? std::numeric_limits<double>::infinity()
                            : 8.0 * params.delta / (gap * gap);
  r.k = grid.k;
  r.step_ok = grid.k < r.step_bound;
  if (space) {
    r.k_over_h_quarter = grid.k / std::pow(space->h, 0.25);
    r.k_over_h_fifth = grid.k / std::pow(space->h, 0.2);
  }
  return r;
}

// ---------------------------------------------------------------- circulant

CirculantSolver::CirculantSolver(const GridSpec& space)
    : space_(space),
      symbols_(space.J / 2 + 1),
      dft_(space.J),
      spectrum_(space.J / 2 + 1),
      buffer_(space.J) {
  for (std::size_t m = 0; m < symbols_.size(); ++m)
    symbols_[m] = laplacian_symbol(static_cast<double>(m), space.h);
}

std::vector<double> CirculantSolver::modal_denominators(const LinearOperatorCoefficients& coeffs,
                                                        double k) const {
  std::vector<double> d(symbols_.size());
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = 1.0 / k + 0.5 * coeffs.symbol(symbols_[m]);
  return d;
}

PeriodicField CirculantSolver::solve(const PeriodicField& rhs,
                                     const LinearOperatorCoefficients& coeffs, double k,
                                     double linear_tol) {
  if (rhs.size() != space_.J) throw DimensionError("CirculantSolver: rhs on a different grid");
  const auto denom = modal_denominators(coeffs, k);
  for (std::size_t m = 0; m < denom.size(); ++m) {
    if (!(denom[m] > 1e-12 / k))
      throw NumericalError("circulant solve: modal denominator " + std::to_string(denom[m]) +
                           " not positive at mode " + std::to_string(m));
  }
  dft_.forward(rhs.values(), spectrum_);
  for (std::size_t m = 0; m < spectrum_.size(); ++m) spectrum_[m] /= denom[m];
  dft_.inverse(spectrum_, buffer_);
  PeriodicField X(buffer_);

  const double rhs_norm = norm_h(rhs);
  if (rhs_norm > 0.0) {
    PeriodicField r = (1.0 / k) * X + 0.5 * apply_L(coeffs, X);
    r -= rhs;
    const double rel = norm_h(r) / rhs_norm;
    if (!(rel <= linear_tol))
      throw NumericalError("circulant solve: relative residual " + std::to_string(rel) +
                           " exceeds linear_tol");
  }
  return X;
}

// ------------------------------------------------------------------ context

StepContext::StepContext(RadiusLaw law, TimeGrid time, GridSpec space, SolverConfig config)
    : law_(std::move(law)),
      time_(time),
      space_(space),
      config_(config),
      node_radius_(time.N + 1),
      half_radius_(time.N),
      circulant_(space) {
  config_.validate();
  for (std::size_t n = 0; n <= time_.N; ++n) node_radius_[n] = law_.radius_at(time_.time(n));
  for (std::size_t n = 0; n < time_.N; ++n) half_radius_[n] = radius_at_half_step(n, time_, law_);
}

double StepContext::node_radius(std::size_t n) const { return node_radius_.at(n); }
double StepContext::half_radius(std::size_t n) const { return half_radius_.at(n); }

LinearOperatorCoefficients StepContext::half_coeffs(std::size_t n) const {
  return LinearOperatorCoefficients::at_radius(params(), half_radius(n));
}

PeriodicField StepContext::solve_linear(const PeriodicField& rhs, std::size_t n) {
  return circulant_.solve(rhs, half_coeffs(n), time_.k, config_.linear_tol);
}

// ------------------------------------------------------------------ schemes

namespace {

// v_c / (6 h R^2_{n+1/2}), the weight of phi(V^{n+1/2}, V^{n+1/2}).
double nonlinear_weight(std::size_t n, const StepContext& ctx) {
  const double R = ctx.half_radius(n);
  return ctx.params().v_c / (6.0 * ctx.space().h * R * R);
}

// V^n / k - (1/2) L^{n+1/2} V^n, the explicit part shared by every linear solve.
PeriodicField explicit_part(const PeriodicField& Vn, std::size_t n, const StepContext& ctx) {
  return (1.0 / ctx.time().k) * Vn - 0.5 * apply_L(ctx.half_coeffs(n), Vn);
}

void check_grid(const PeriodicField& V, const StepContext& ctx, const char* op) {
  if (V.size() != ctx.space().J)
    throw DimensionError(std::string(op) + ": field does not live on the context grid");
}

}  // namespace

PeriodicField cn_residual(const PeriodicField& Vn, const PeriodicField& Vnp1, std::size_t n,
                          const StepContext& ctx) {
  require_same_grid(Vn, Vnp1, "cn_residual");
  const PeriodicField mid = 0.5 * (Vn + Vnp1);
  PeriodicField r = (1.0 / ctx.time().k) * (Vnp1 - Vn);
  r += apply_L(ctx.half_coeffs(n), mid);
  r -= nonlinear_weight(n, ctx) * phi(mid, mid);
  return r;
}

double relative_cn_residual(const PeriodicField& Vn, const PeriodicField& Vnp1, std::size_t n,
                            const StepContext& ctx) {
  require_same_grid(Vn, Vnp1, "relative_cn_residual");
  const PeriodicField mid = 0.5 * (Vn + Vnp1);
  const PeriodicField lin = apply_L(ctx.half_coeffs(n), mid);
  const PeriodicField nl = nonlinear_weight(n, ctx) * phi(mid, mid);
  PeriodicField r = (1.0 / ctx.time().k) * (Vnp1 - Vn);
  r += lin;
  r -= nl;
  const double scale =
      (norm_h(Vn) + norm_h(Vnp1)) / ctx.time().k + norm_h(lin) + norm_h(nl);
  return scale > 0.0 ? norm_h(r) / scale : 0.0;
}

PeriodicField solve_linear_cn(const PeriodicField& rhs, std::size_t n, StepContext& ctx) {
  check_grid(rhs, ctx, "solve_linear_cn");
  return ctx.solve_linear(rhs, n);
}

PeriodicField newton_first_step(const PeriodicField& v0, StepContext& ctx) {
  check_grid(v0, ctx, "newton_first_step");
  PeriodicField rhs = explicit_part(v0, 0, ctx);
  rhs += nonlinear_weight(0, ctx) * phi(v0, v0);
  return ctx.solve_linear(rhs, 0);
}

PeriodicField extrapolate(const PeriodicField& Vn, const PeriodicField& Vnm1) {
  require_same_grid(Vn, Vnm1, "extrapolate");
  return 2.0 * Vn - Vnm1;
}

PeriodicField newton_iterate(const PeriodicField& Vn, const PeriodicField& Vhat,
                             const PeriodicField& Wj, std::size_t n, StepContext& ctx) {
  check_grid(Vn, ctx, "newton_iterate");
  require_same_grid(Vn, Vhat, "newton_iterate");
  require_same_grid(Vn, Wj, "newton_iterate");
  const PeriodicField base = Vn + Vhat;
  PeriodicField forcing = psi(base, Wj - Vhat);
  forcing += phi(base, base);
  PeriodicField rhs = explicit_part(Vn, n, ctx);
  // (1/4) of the midpoint weight: phi((V^n + W)/2, .) carries a factor 1/4.
  rhs += (0.25 * nonlinear_weight(n, ctx)) * forcing;
  return ctx.solve_linear(rhs, n);
}

PeriodicField cn_step(const PeriodicField& Vn, std::size_t n, StepContext& ctx, double tol,
                      std::optional<PeriodicField> guess) {
  check_grid(Vn, ctx, "cn_step");
  PeriodicField W = guess ? std::move(*guess) : Vn;
  double rel = relative_cn_residual(Vn, W, n, ctx);
  for (std::size_t it = 0; it < ctx.config().max_iters; ++it) {
    if (rel <= tol) return W;
    // Linearizing about the current iterate makes the psi correction vanish.
    W = newton_iterate(Vn, W, W, n, ctx);
    rel = relative_cn_residual(Vn, W, n, ctx);
  }
  if (rel <= tol) return W;
  throw StepFailure(n + 1, "Crank-Nicolson iteration did not reach relative residual " +
                               std::to_string(tol) + " (last " + std::to_string(rel) + ") in " +
                               std::to_string(ctx.config().max_iters) + " iterations");
}

double mean_recursion_factor(std::size_t n, const StepContext& ctx) {
  const double R = ctx.half_radius(n);
  const double a = ctx.time().k * (ctx.params().alpha - 1.0);
  return (2.0 * R * R - a) / (2.0 * R * R + a);
}

// --------------------------------------------------------------- trajectory

bool Trajectory::has(std::size_t n) const { return std::binary_search(steps.begin(), steps.end(), n); }

const PeriodicField& Trajectory::at(std::size_t n) const {
  const auto it = std::lower_bound(steps.begin(), steps.end(), n);
  if (it == steps.end() || *it != n)
    throw DomainError("trajectory: snapshot " + std::to_string(n) + " was not stored");
  return snapshots[static_cast<std::size_t>(it - steps.begin())];
}

double Trajectory::max_abs_mean() const {
  double m = 0.0;
  for (double s : mean) m = std::max(m, std::abs(s));
  return m;
}

namespace {

void record(Trajectory& traj, std::size_t n, const PeriodicField& V, std::size_t stride) {
  traj.mean[n] = discrete_integral(V);
  traj.v_sq_integral[n] = interpolant_square_integral(V);
  if (n % stride == 0 || n == traj.time.N) {
    traj.steps.push_back(n);
    traj.snapshots.push_back(V);
  }
}

PeriodicField newton_step(const PeriodicField& Vn, const PeriodicField& Vnm1, std::size_t n,
                          StepContext& ctx) {
  const PeriodicField Vhat = extrapolate(Vn, Vnm1);
  PeriodicField W = Vhat;
  const auto& cfg = ctx.config();
  if (cfg.newton_residual_tol > 0.0) {
    // Residual-driven j_n; the linearized fixed point is not the exact CN
    // solution, so stagnation also ends the loop.
    for (std::size_t j = 0; j < cfg.max_iters; ++j) {
      PeriodicField next = newton_iterate(Vn, Vhat, W, n, ctx);
      const double change = norm_h(next - W);
      W = std::move(next);
      if (relative_cn_residual(Vn, W, n, ctx) <= cfg.newton_residual_tol) break;
      if (change <= 4.0 * std::numeric_limits<double>::epsilon() * norm_h(W)) break;
    }
    return W;
  }
  for (std::size_t j = 0; j < cfg.newton_iters; ++j) W = newton_iterate(Vn, Vhat, W, n, ctx);
  return W;
}

}  // namespace

Trajectory run(StepContext& ctx, const PeriodicField& v0, Scheme scheme) {
  check_grid(v0, ctx, "run");
  const TimeGrid& tg = ctx.time();
  const std::size_t stride = ctx.config().snapshot_stride;

  Trajectory traj;
  traj.space = ctx.space();
  traj.time = tg;
  traj.scheme = scheme;
  traj.radius.resize(tg.N + 1);
  for (std::size_t n = 0; n <= tg.N; ++n) traj.radius[n] = ctx.node_radius(n);
  traj.mean.assign(tg.N + 1, 0.0);
  traj.v_sq_integral.assign(tg.N + 1, 0.0);

  record(traj, 0, v0, stride);
  const double S0 = traj.mean[0];
  if (std::abs(S0) > 1e-12 * std::max(1.0, norm_h(v0))) {
    traj.warnings.push_back("initial field has non-zero mean S^0 = " + std::to_string(S0) +
                            "; it decays geometrically under the scheme");
  }

  PeriodicField prev = v0;
  PeriodicField curr = v0;
  for (std::size_t n = 0; n < tg.N; ++n) {
    PeriodicField next = [&] {
      try {
        if (scheme == Scheme::CrankNicolson) {
          std::optional<PeriodicField> guess;
          if (n > 0) guess = extrapolate(curr, prev);
          return cn_step(curr, n, ctx, ctx.config().reference_tol, std::move(guess));
        }
        if (n == 0) return newton_first_step(curr, ctx);
        return newton_step(curr, prev, n, ctx);
      } catch (const StepFailure&) {
        throw;
      } catch (const std::exception& e) {
        throw StepFailure(n + 1, e.what());
      }
    }();
    for (double x : next.values())
      if (!std::isfinite(x)) throw StepFailure(n + 1, "non-finite value in solution");
    prev = std::move(curr);
    curr = std::move(next);
    record(traj, n + 1, curr, stride);
  }
  return traj;
}

Trajectory run(const ModelParams& params, const TimeGrid& grid, const GridSpec& space,
               const SolverConfig& config, const PeriodicField& v0, Scheme scheme) {
  StepContext ctx(RadiusLaw(params), grid, space, config);
  return run(ctx, v0, scheme);
}

}  // namespace ksring
