#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ksring/field.hpp"
#include "ksring/fourier.hpp"
#include "ksring/operators.hpp"
#include "ksring/params.hpp"
#include "ksring/radius.hpp"

namespace ksring {

struct SolverConfig {
  /// Newton iterations per step (j_n) when no residual criterion is set.
  std::size_t newton_iters = 3;
  /// If > 0, Newton iterations continue until the relative CN residual drops
  /// below this value (at least one iteration, at most max_iters).
  double newton_residual_tol = 0.0;
  /// Relative residual accepted from a circulant solve.
  double linear_tol = 1e-10;
  /// Relative CN residual at which the reference solver stops.
  double reference_tol = 1e-12;
  std::size_t max_iters = 50;
  /// Keep every stride-th snapshot (the first and last are always kept).
  std::size_t snapshot_stride = 1;

  void validate() const;
};

/// Existence conditions of the Crank-Nicolson scheme together with the bound values.
struct AdmissibilityReport {
  double radius_floor = 0.0;  // sqrt(delta / (alpha - 1))
  double R0 = 0.0;
  bool radius_ok = false;     // R0 > radius_floor
  double R_T = 0.0;           // R(T)
  double step_bound = 0.0;    // 8 delta / (alpha - 1 - delta / R(T)^2)^2
  double k = 0.0;
  bool step_ok = false;       // k < step_bound
  // Mesh ratios from the asymptotic regimes of the convergence theory; recorded only.
  std::optional<double> k_over_h_quarter;
  std::optional<double> k_over_h_fifth;

  bool pass() const noexcept { return radius_ok && step_ok; }
};

AdmissibilityReport check_admissibility(const ModelParams& params, const TimeGrid& grid,
                                        const RadiusLaw& law,
                                        std::optional<GridSpec> space = std::nullopt);

/// Solves ((1/k) I + (1/2) L) X = rhs by diagonalizing the symmetric
/// circulant matrix in the discrete Fourier basis.
class CirculantSolver {
public:
  explicit CirculantSolver(const GridSpec& space);

  const GridSpec& space() const noexcept { return space_; }

  /// Modal denominator 1/k + (1/2) symbol(s_m) for m = 0..J/2.
  std::vector<double> modal_denominators(const LinearOperatorCoefficients& coeffs, double k) const;

  /// Throws NumericalError naming the mode when a denominator is not safely
  /// positive, or when the relative residual exceeds linear_tol.
  PeriodicField solve(const PeriodicField& rhs, const LinearOperatorCoefficients& coeffs,
                      double k, double linear_tol);

private:
  GridSpec space_;
  std::vector<double> symbols_;
  RealDft dft_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<double> buffer_;
};

/// Everything one time integration needs: model, grids, radius path and solver settings.
/// Holds per-step radii and a circulant solver; use one context per thread.
class StepContext {
public:
  StepContext(RadiusLaw law, TimeGrid time, GridSpec space, SolverConfig config = {});

  const ModelParams& params() const noexcept { return law_.params(); }
  const RadiusLaw& law() const noexcept { return law_; }
  const TimeGrid& time() const noexcept { return time_; }
  const GridSpec& space() const noexcept { return space_; }
  const SolverConfig& config() const noexcept { return config_; }

  double node_radius(std::size_t n) const;
  /// R(t^n + k/2); valid for n = 0..N-1.
  double half_radius(std::size_t n) const;
  LinearOperatorCoefficients half_coeffs(std::size_t n) const;

  /// Solves ((1/k) I + (1/2) L^{n+1/2}) X = rhs.
  PeriodicField solve_linear(const PeriodicField& rhs, std::size_t n);

private:
  RadiusLaw law_;
  TimeGrid time_;
  GridSpec space_;
  SolverConfig config_;
  std::vector<double> node_radius_;
  std::vector<double> half_radius_;
  CirculantSolver circulant_;
};

/// dV + L^{n+1/2} V^{n+1/2} - (v_c / (6 h R^2_{n+1/2})) phi(V^{n+1/2}, V^{n+1/2}).
PeriodicField cn_residual(const PeriodicField& Vn, const PeriodicField& Vnp1, std::size_t n,
                          const StepContext& ctx);

/// norm_h(cn_residual) divided by the size of its individual terms.
double relative_cn_residual(const PeriodicField& Vn, const PeriodicField& Vnp1, std::size_t n,
                            const StepContext& ctx);

/// Exact Crank-Nicolson step: iterates the linearized system, re-centred on
/// the latest iterate, until relative_cn_residual <= tol.
/// Throws StepFailure after config().max_iters iterations.
PeriodicField cn_step(const PeriodicField& Vn, std::size_t n, StepContext& ctx, double tol,
                      std::optional<PeriodicField> guess = std::nullopt);

/// First step of the Newton scheme: the nonlinear term is taken at v^0.
PeriodicField newton_first_step(const PeriodicField& v0, StepContext& ctx);

/// 2 V^n - V^{n-1}
PeriodicField extrapolate(const PeriodicField& Vn, const PeriodicField& Vnm1);

/// One linearized iteration from step n to n+1:
///   (W - V^n)/k + (1/2) L^{n+1/2}(W + V^n)
///     = (v_c / (24 h R^2_{n+1/2})) [psi(V^n + Vhat, W^j - Vhat) + phi(V^n + Vhat, V^n + Vhat)].
PeriodicField newton_iterate(const PeriodicField& Vn, const PeriodicField& Vhat,
                             const PeriodicField& Wj, std::size_t n, StepContext& ctx);

PeriodicField solve_linear_cn(const PeriodicField& rhs, std::size_t n, StepContext& ctx);

/// S^{n+1} / S^n implied by the scheme: (2R^2 - k(alpha-1)) / (2R^2 + k(alpha-1)) at R_{n+1/2}.
double mean_recursion_factor(std::size_t n, const StepContext& ctx);

enum class Scheme { Newton, CrankNicolson };

struct Trajectory {
  GridSpec space;
  TimeGrid time;
  Scheme scheme = Scheme::Newton;
  std::vector<double> radius;         // R(t^n), n = 0..N
  std::vector<double> mean;           // S^n = h sum V_i^n
  std::vector<double> v_sq_integral;  // integral of the squared interpolant at t^n
  std::vector<std::size_t> steps;     // stored snapshot indices, increasing
  std::vector<PeriodicField> snapshots;
  std::vector<std::string> warnings;

  bool has(std::size_t n) const;
  /// Throws DomainError if step n was not stored.
  const PeriodicField& at(std::size_t n) const;
  const PeriodicField& final_field() const { return snapshots.back(); }
  double max_abs_mean() const;
};

/// Runs the Newton scheme (or the Crank-Nicolson reference) from v0.
/// Throws StepFailure with the failing step index.
Trajectory run(StepContext& ctx, const PeriodicField& v0, Scheme scheme = Scheme::Newton);

/// Convenience overload using the expanding radius law.
Trajectory run(const ModelParams& params, const TimeGrid& grid, const GridSpec& space,
               const SolverConfig& config, const PeriodicField& v0,
               Scheme scheme = Scheme::Newton);

}  // namespace ksring
