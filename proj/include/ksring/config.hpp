#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksring/params.hpp"
#include "ksring/solver.hpp"

namespace ksring {

/// Process exit codes of the command-line tool.
enum class ExitCode : int { Ok = 0, Validation = 1, SolverFailure = 2, Io = 3, Parse = 4 };

class ConfigIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One or more invalid fields; each message starts with the field path ("grid.J: ...").
class ConfigValidationError : public std::runtime_error {
public:
  explicit ConfigValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  std::vector<std::string> problems_;
};

enum class V0Method { Analytic, CenteredDifference };

/// u0(sigma) = sum_i p_i cos(m_i sigma).
struct InitialCondition {
  std::vector<double> amplitudes;
  std::vector<int> modes;
  std::optional<double> I0;
};

struct OutputSpec {
  std::string dir = "ksring_out";
  std::size_t stride = 1;
  bool v = true;
  bool u = true;
  bool curve = true;
  bool spectrum = true;
  bool means = true;
};

struct StabilitySpec {
  double R_min = 0.0;
  double R_max = 30.0;
  std::size_t samples = 301;
  int m_max = 32;
};

struct RunConfig {
  ModelParams model;  // model.R0 is read from [initial] R0
  std::size_t J = 1024;
  double k = 0.01;
  double T = 100.0;
  InitialCondition initial;
  SolverConfig solver;
  V0Method v0_method = V0Method::Analytic;
  OutputSpec output;
  StabilitySpec stability;

  TimeGrid time_grid() const { return TimeGrid::from_increment(k, T); }
};

/// Parses the sectioned key-value format:
///
///   [model]     delta, alpha, v_c
///   [grid]      J, k, T
///   [initial]   R0, amplitudes (comma list), modes (comma list), I0 (optional)
///   [solver]    jn, newton_residual_tol, linear_tol, reference_tol, max_iters, v0 (analytic | centered)
///   [output]    dir, stride, emit (comma list of v, u, curve, spectrum, means)
///   [stability] R_min, R_max, samples, m_max
///
/// Every section and key is optional; omitted values keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigValidationError listing every violated constraint.
void validate(const RunConfig& cfg);

/// Canonical text form (stable key order, 17 significant digits) used for hashing.
std::string canonical_form(const RunConfig& cfg);
/// 64-bit FNV-1a of canonical_form, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Parameters of the wavenumber-selection figures (R0 = 6, modes 2..5) with the given grid size.
RunConfig wavenumber_config(double R0, std::vector<int> modes, std::size_t J);

}  // namespace ksring
