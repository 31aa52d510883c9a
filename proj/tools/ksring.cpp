// ksring: command-line driver for runs, convergence ladders, stability maps
// and the wavenumber-selection suite.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ksring/config.hpp"
#include "ksring/experiments.hpp"

namespace fs = std::filesystem;
using namespace ksring;

namespace {

struct Options {
  std::string config;
  std::string out;
  bool force = false;
  int levels = 3;
  std::optional<int> jn;
  std::optional<long> seed;  // reserved
};

int code(ExitCode c) { return static_cast<int>(c); }

// --out wins, then KSRING_OUT, then the config's own output.dir.
fs::path output_dir(const Options& o, const RunConfig& cfg) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("KSRING_OUT"); env && *env) return env;
  return cfg.output.dir;
}

RunConfig configure(const Options& o, bool required) {
  RunConfig cfg;
  if (!o.config.empty())
    cfg = load_config(o.config);
  else if (required)
    throw ConfigValidationError({"--config: a configuration file is required"});
  else
    cfg = wavenumber_config(6.0, {2, 3, 4, 5}, 1024);
  if (o.jn) cfg.solver.newton_iters = *o.jn;
  validate(cfg);
  return cfg;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

int cmd_run(const Options& o) {
  const RunConfig cfg = configure(o, true);
  const RunResult res = execute_run(cfg, o.force);
  if (!res.admissibility.pass())
    std::cerr << "warning: parameters outside the admissible range"
              << (o.force ? " (continuing because of --force)" : "") << '\n';
  const fs::path dir = output_dir(o, cfg);
  write_run_outputs(res, dir);
  if (!res.failure.empty()) std::cerr << "error: " << res.failure << '\n';
  if (res.trajectory)
    for (const auto& w : res.trajectory->warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "run: status " << res.report()["status"].get<std::string>() << ", output in " << dir
            << '\n';
  return code(res.exit_code());
}

int cmd_eoc(const Options& o) {
  const RunConfig cfg = configure(o, true);
  const EocReport rep = run_eoc(cfg, o.levels);
  const fs::path dir = output_dir(o, cfg);
  fs::create_directories(dir);
  nlohmann::json j{{"params", {{"delta", cfg.model.delta}, {"alpha", cfg.model.alpha},
                               {"v_c", cfg.model.v_c}, {"R0", cfg.model.R0}}},
                   {"grid", {{"J", cfg.J}, {"k", cfg.k}, {"T", cfg.T}, {"levels", o.levels}}},
                   {"eoc", rep.to_json()},
                   {"config_hash", config_hash(cfg)}};
  write_json(dir / "eoc_report.json", j);
  for (std::size_t l = 0; l < rep.levels.size(); ++l) {
    const auto& e = rep.levels[l];
    std::printf("J=%-6zu k=%-10.4g err_v=%.3e err_u=%.3e", e.J, e.k, e.error_v_cn, e.error_u_cn);
    if (l > 0)
      std::printf("  eoc_v=%.3f eoc_u=%.3f", rep.eoc_v_cn[l - 1], rep.eoc_u_cn[l - 1]);
    std::printf("\n");
  }
  return code(ExitCode::Ok);
}

int cmd_stability_map(const Options& o) {
  const RunConfig cfg = configure(o, false);
  const auto& s = cfg.stability;
  const StabilityMap map = stability_map(cfg.model, s.R_min, s.R_max, s.samples, s.m_max);
  const fs::path dir = output_dir(o, cfg);
  write_stability_map(map, dir);
  std::printf("R_star = %.17g; map written to %s\n", map.R_star, dir.c_str());
  return code(ExitCode::Ok);
}

int cmd_wavenumber_suite(const Options& o) {
  const RunConfig cfg = configure(o, false);
  const auto rows = wavenumber_suite(cfg.J);
  const fs::path dir = output_dir(o, cfg);
  write_suite(rows, cfg.J, dir);
  bool all = true;
  for (const auto& r : rows) {
    std::printf("R0=%-4g predicted=%d measured=%d %s\n", r.R0, r.predicted_at_R0.value_or(0),
                r.measured.value_or(0), r.pass ? "pass" : "FAIL");
    all = all && r.pass && r.failure.empty();
  }
  return code(all ? ExitCode::Ok : ExitCode::SolverFailure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kuramoto-Sivashinsky dynamics on an expanding circle"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "configuration file");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--jn", o.jn, "Newton iterations per step")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "reserved; all experiments are deterministic");
  };
  auto* run = app.add_subcommand("run", "simulate one configuration");
  add_common(run);
  run->add_flag("--force", o.force, "run even when the admissibility check fails");
  auto* eoc = app.add_subcommand("eoc", "self-convergence ladder against a fine reference");
  add_common(eoc);
  eoc->add_option("--levels", o.levels, "ladder length (>= 3)");
  auto* smap = app.add_subcommand("stability-map", "neutral curves and unstable sets over R");
  add_common(smap);
  auto* suite = app.add_subcommand("wavenumber-suite", "the five wavenumber-selection runs");
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::Validation);
  }

  try {
    if (run->parsed()) return cmd_run(o);
    if (eoc->parsed()) return cmd_eoc(o);
    if (smap->parsed()) return cmd_stability_map(o);
    return cmd_wavenumber_suite(o);
  } catch (const ConfigParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return code(ExitCode::Parse);
  } catch (const ConfigValidationError& e) {
    for (const auto& p : e.problems()) std::cerr << "invalid: " << p << '\n';
    return code(ExitCode::Validation);
  } catch (const ConfigIoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return code(ExitCode::Io);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return code(ExitCode::Io);
  } catch (const StepFailure& e) {
    std::cerr << "solver failure at step " << e.step() << ": " << e.what() << '\n';
    return code(ExitCode::SolverFailure);
  } catch (const NumericalError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return code(ExitCode::SolverFailure);
  } catch (const std::runtime_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return code(ExitCode::Io);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::Validation);
  }
}
