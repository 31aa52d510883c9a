#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ksring/config.hpp"
#include "ksring/field.hpp"
#include "ksring/reconstruct.hpp"
#include "ksring/solver.hpp"
#include "ksring/stability.hpp"

#include <json.hpp>

namespace ksring {

/// Samples of u0(sigma) = sum p_i cos(m_i sigma).
PeriodicField initial_height(const RunConfig& cfg);
/// v0 = du0/dsigma, analytic or by centred differences of the sampled u0.
PeriodicField initial_gradient(const RunConfig& cfg);
/// I(0): the analytic mean of the cosine sum (zero) unless overridden.
double initial_mean(const RunConfig& cfg);

/// Reconstructed heights at every stored snapshot; U^0 is the sampled u0.
struct HeightPath {
  MeanPath mean;
  std::vector<PeriodicField> heights;  // aligned with Trajectory::steps
};
HeightPath reconstruct_heights(const Trajectory& traj, const RadiusLaw& law,
                               const PeriodicField& u0, double I0);

// ------------------------------------------------------------------- run

struct RunResult {
  RunConfig config;
  AdmissibilityReport admissibility;
  std::optional<Trajectory> trajectory;
  std::optional<HeightPath> heights;
  std::optional<SpectralReport> final_spectrum;
  std::optional<std::size_t> failed_step;
  std::string failure;
  double wall_time_seconds = 0.0;

  ExitCode exit_code() const;
  nlohmann::json report() const;
};

/// Runs the Newton scheme for cfg. Does not throw on inadmissible input or
/// solver failure; both are recorded in the result.
RunResult execute_run(const RunConfig& cfg, bool force);

/// Writes the artifacts enabled in cfg.output plus report.json into dir.
void write_run_outputs(const RunResult& result, const std::filesystem::path& dir);

// ------------------------------------------------------------------- EOC

struct EocLevel {
  std::size_t J = 0;
  double h = 0.0;
  double k = 0.0;
  double error_v_cn = 0.0;
  double error_u_cn = 0.0;
  double error_v_newton = 0.0;
  double error_u_newton = 0.0;
  double newton_cn_difference = 0.0;  // max_n ||V_Newton - V_CN||_h
};

struct EocReport {
  std::size_t reference_J = 0;
  double reference_k = 0.0;
  std::vector<EocLevel> levels;
  std::vector<double> eoc_v_cn, eoc_u_cn, eoc_v_newton, eoc_u_newton;  // per refinement pair
  double order_v_cn = 0.0;  // least-squares slope of log(error) against log(h)
  double order_u_cn = 0.0;
  double order_v_newton = 0.0;
  double order_u_newton = 0.0;
  AdmissibilityReport finest_admissibility;

  nlohmann::json to_json() const;
};

/// Self-convergence ladder (J, k), (2J, k/2), ... with `levels` entries. The
/// reference is a Crank-Nicolson run at 8x the finest resolution in both h
/// and k. Throws ConfigValidationError when levels < 3 or the reference
/// level is not admissible.
EocReport run_eoc(const RunConfig& cfg, int levels);

// --------------------------------------------------------- stability map

struct StabilityRow {
  double R = 0.0;
  std::vector<double> neutral_delta;  // m = 2..m_max
  std::vector<int> unstable_modes;
  std::optional<int> predicted_dominant;
};

struct StabilityMap {
  ModelParams params;
  int m_max = 0;
  double R_star = 0.0;
  std::vector<StabilityRow> rows;
};

StabilityMap stability_map(const ModelParams& params, double R_min, double R_max,
                           std::size_t samples, int m_max);
void write_stability_map(const StabilityMap& map, const std::filesystem::path& dir);

// ------------------------------------------------------ wavenumber suite

struct SuiteRow {
  double R0 = 0.0;
  std::vector<int> modes;
  std::vector<int> unstable_at_R0;
  std::optional<int> predicted_at_R0;
  std::optional<int> predicted_at_half_time;  // argmax lambda at R(T/2)
  std::optional<int> measured;
  double max_abs_mean = 0.0;
  // Central-difference residual of the mean-height ODE along the run.
  double mean_ode_residual = 0.0;
  double mean_ode_scale = 0.0;
  bool pass = false;
  std::string failure;
};

/// The five wavenumber-selection runs, R0 in {6, 9, 12, 15, 18} with modes
/// R0/3 .. R0/3 + 3, p = 0.1, k = 0.01, T = 100.
std::vector<SuiteRow> wavenumber_suite(std::size_t J);
void write_suite(const std::vector<SuiteRow>& rows, std::size_t J,
                 const std::filesystem::path& dir);

/// max_n |(I~^{n+1} - I~^{n-1})/(2k) - rhs^n| and the largest rhs term magnitude,
/// rhs = -((alpha-1)/R^2) I~ + (v_c / (4 pi R^2)) Q.
std::pair<double, double> mean_ode_residual(const Trajectory& traj, const RadiusLaw& law,
                                            const MeanPath& path);

}  // namespace ksring
