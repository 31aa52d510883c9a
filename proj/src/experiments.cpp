#include "ksring/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>

#include "ksring/csv.hpp"

namespace ksring {

using nlohmann::json;

PeriodicField initial_height(const RunConfig& cfg) {
  const auto& ic = cfg.initial;
  return PeriodicField::sample(cfg.J, [&](double s) {
    double u = 0.0;
    for (std::size_t i = 0; i < ic.modes.size(); ++i) u += ic.amplitudes[i] * std::cos(ic.modes[i] * s);
    return u;
  });
}

PeriodicField initial_gradient(const RunConfig& cfg) {
  if (cfg.v0_method == V0Method::CenteredDifference) {
    const PeriodicField u0 = initial_height(cfg);
    const double inv_2h = 0.5 / u0.spacing();
    std::vector<double> v(cfg.J);
    for (std::size_t i = 0; i < cfg.J; ++i) {
      const auto s = static_cast<std::ptrdiff_t>(i);
      v[i] = (u0[s + 1] - u0[s - 1]) * inv_2h;
    }
    return PeriodicField(std::move(v));
  }
  const auto& ic = cfg.initial;
  return PeriodicField::sample(cfg.J, [&](double s) {
    double v = 0.0;
    for (std::size_t i = 0; i < ic.modes.size(); ++i)
      v -= ic.amplitudes[i] * ic.modes[i] * std::sin(ic.modes[i] * s);
    return v;
  });
}

double initial_mean(const RunConfig& cfg) {
  // Every cos(m sigma) with m >= 2 integrates to zero over the period.
  return cfg.initial.I0.value_or(0.0);
}

HeightPath reconstruct_heights(const Trajectory& traj, const RadiusLaw& law,
                               const PeriodicField& u0, double I0) {
  HeightPath hp{mean_path(traj, law, I0), {}};
  hp.heights.reserve(traj.steps.size());
  for (std::size_t s = 0; s < traj.steps.size(); ++s) {
    const std::size_t n = traj.steps[s];
    if (n == 0)
      hp.heights.push_back(u0);
    else
      hp.heights.push_back(reconstruct_u(traj.snapshots[s], hp.mean.values[n]));
  }
  return hp;
}

// ------------------------------------------------------------------- run

namespace {

json params_json(const ModelParams& p) {
  return {{"delta", p.delta}, {"alpha", p.alpha}, {"v_c", p.v_c}, {"R0", p.R0}};
}

json admissibility_json(const AdmissibilityReport& a) {
  json bounds{{"radius_floor", a.radius_floor}, {"R0", a.R0},       {"R_T", a.R_T},
              {"step_bound", a.step_bound},     {"k", a.k}};
  if (a.k_over_h_quarter) bounds["k_over_h_quarter"] = *a.k_over_h_quarter;
  if (a.k_over_h_fifth) bounds["k_over_h_fifth"] = *a.k_over_h_fifth;
  return {{"bounds", bounds},
          {"radius_ok", a.radius_ok},
          {"step_ok", a.step_ok},
          {"pass", a.pass()}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json spectral_json(const SpectralReport& r) {
  json lambda = json::object();
  for (const auto& [m, l] : r.lambda) lambda[std::to_string(m)] = l;
  return {{"R", r.R},
          {"R_star", r.R_star},
          {"lambda", lambda},
          {"unstable_modes", r.unstable_modes},
          {"neutrally_stable", r.neutrally_stable()},
          {"predicted_dominant", optional_json(r.predicted_dominant)},
          {"measured_dominant", optional_json(r.measured_dominant)}};
}

std::string step_name(const char* prefix, std::size_t n, std::size_t N) {
  int width = 6;
  for (std::size_t x = N; x >= 1000000; x /= 10) ++width;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%0*zu.csv", prefix, width, n);
  return buf;
}

}  // namespace

ExitCode RunResult::exit_code() const {
  if (!admissibility.pass() && !trajectory && !failed_step) return ExitCode::Validation;
  if (failed_step || !trajectory) return ExitCode::SolverFailure;
  return ExitCode::Ok;
}

json RunResult::report() const {
  const TimeGrid tg = config.time_grid();
  const GridSpec g = GridSpec::with_points(config.J);
  json j{{"params", params_json(config.model)},
         {"grid", {{"J", g.J}, {"h", g.h}, {"k", tg.k}, {"N", tg.N}, {"T", tg.T}}},
         {"initial", {{"amplitudes", config.initial.amplitudes}, {"modes", config.initial.modes},
                      {"I0", initial_mean(config)}}},
         {"solver", {{"jn", config.solver.newton_iters},
                     {"newton_residual_tol", config.solver.newton_residual_tol},
                     {"linear_tol", config.solver.linear_tol}}},
         {"admissibility", admissibility_json(admissibility)},
         {"wall_time_seconds", wall_time_seconds},
         {"config_hash", config_hash(config)}};
  if (trajectory) {
    j["status"] = "ok";
    j["max_abs_mean"] = trajectory->max_abs_mean();
    j["snapshots"] = trajectory->steps;
    j["warnings"] = trajectory->warnings;
    j["final_radius"] = trajectory->radius.back();
  } else {
    j["status"] = admissibility.pass() || failed_step ? "solver_failure" : "inadmissible";
    j["failure"] = failure;
    j["failed_step"] = optional_json(failed_step);
  }
  if (final_spectrum) j["spectral"] = spectral_json(*final_spectrum);
  return j;
}

RunResult execute_run(const RunConfig& cfg, bool force) {
  const auto start = std::chrono::steady_clock::now();
  validate(cfg);
  RunResult res;
  res.config = cfg;
  const RadiusLaw law(cfg.model);
  const TimeGrid tg = cfg.time_grid();
  const GridSpec space = GridSpec::with_points(cfg.J);
  res.admissibility = check_admissibility(cfg.model, tg, law, space);
  if (!res.admissibility.pass() && !force) {
    res.failure = "parameters violate the existence conditions (R0 > sqrt(delta/(alpha-1)) and "
                  "k < 8 delta/(alpha-1-delta/R(T)^2)^2); rerun with --force to override";
    return res;
  }

  SolverConfig sc = cfg.solver;
  sc.snapshot_stride = cfg.output.stride;
  try {
    StepContext ctx(law, tg, space, sc);
    res.trajectory = run(ctx, initial_gradient(cfg), Scheme::Newton);
  } catch (const StepFailure& e) {
    res.failed_step = e.step();
    res.failure = e.what();
  } catch (const std::exception& e) {
    res.failed_step = 0;
    res.failure = e.what();
  }
  if (res.trajectory) {
    res.heights = reconstruct_heights(*res.trajectory, law, initial_height(cfg), initial_mean(cfg));
    const int m_max = std::min<int>(cfg.stability.m_max, static_cast<int>(cfg.J / 2));
    res.final_spectrum = spectral_report(res.trajectory->radius.back(), cfg.model, m_max,
                                         &res.heights->heights.back());
  }
  res.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

void write_run_outputs(const RunResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const RunConfig& cfg = result.config;
  if (result.trajectory && result.heights) {
    const Trajectory& traj = *result.trajectory;
    const HeightPath& hp = *result.heights;
    const std::size_t N = traj.time.N;
    const GridSpec& g = traj.space;

    if (cfg.output.v || cfg.output.u) {
      fs::create_directories(dir / "snapshots");
      for (std::size_t s = 0; s < traj.steps.size(); ++s) {
        CsvTable t;
        t.header = {"sigma"};
        if (cfg.output.v) t.header.push_back("v");
        if (cfg.output.u) t.header.push_back("u");
        for (std::size_t i = 0; i < g.J; ++i) {
          const auto ii = static_cast<std::ptrdiff_t>(i);
          std::vector<double> row{g.sigma(ii)};
          if (cfg.output.v) row.push_back(traj.snapshots[s][ii]);
          if (cfg.output.u) row.push_back(hp.heights[s][ii]);
          t.rows.push_back(std::move(row));
        }
        write_csv(dir / "snapshots" / step_name("snapshot", traj.steps[s], N), t);
      }
    }
    if (cfg.output.curve) {
      fs::create_directories(dir / "curves");
      for (std::size_t s = 0; s < traj.steps.size(); ++s) {
        CsvTable t{{"x", "y"}, {}};
        for (const auto& [x, y] : curve_points(hp.heights[s], traj.radius[traj.steps[s]]))
          t.rows.push_back({x, y});
        write_csv(dir / "curves" / step_name("curve", traj.steps[s], N), t);
      }
    }
    if (cfg.output.means) {
      CsvTable t{{"n", "t", "S_n", "I_tilde"}, {}};
      for (std::size_t n = 0; n <= N; ++n)
        t.rows.push_back({static_cast<double>(n), traj.time.time(n), traj.mean[n], hp.mean.values[n]});
      write_csv(dir / "means.csv", t);
    }
    if (cfg.output.spectrum) {
      CsvTable t{{"n", "t", "R", "m", "lambda", "amplitude"}, {}};
      const int m_max = std::min<int>(cfg.stability.m_max, static_cast<int>(g.J / 2));
      for (std::size_t s = 0; s < traj.steps.size(); ++s) {
        const std::size_t n = traj.steps[s];
        const double R = traj.radius[n];
        const auto amp = mode_amplitudes(hp.heights[s]);
        for (int m = 1; m <= m_max; ++m)
          t.rows.push_back({static_cast<double>(n), traj.time.time(n), R, static_cast<double>(m),
                            lambda_m(m, R, cfg.model), amp[static_cast<std::size_t>(m)]});
      }
      write_csv(dir / "spectrum.csv", t);
    }
  }
  std::ofstream out(dir / "report.json");
  if (!out) throw std::runtime_error("cannot write report.json in '" + dir.string() + "'");
  out << result.report().dump(2) << '\n';
}

// ------------------------------------------------------------------- EOC

namespace {

struct LevelRuns {
  Trajectory cn;
  Trajectory newton;
  HeightPath cn_u;
  HeightPath newton_u;
};

RunConfig level_config(const RunConfig& base, std::size_t J, double k) {
  RunConfig c = base;
  c.J = J;
  c.k = k;
  return c;
}

Trajectory run_level(const RunConfig& c, Scheme scheme, std::size_t stride) {
  SolverConfig sc = c.solver;
  sc.snapshot_stride = stride;
  StepContext ctx(RadiusLaw(c.model), c.time_grid(), GridSpec::with_points(c.J), sc);
  return run(ctx, initial_gradient(c), scheme);
}

// max over the level's time nodes of ||level - reference restricted to the level grid||_h.
double ladder_error(const Trajectory& level, const std::vector<PeriodicField>& level_fields,
                    const Trajectory& ref, const std::vector<PeriodicField>& ref_fields) {
  const std::size_t space_ratio = ref.space.J / level.space.J;
  const std::size_t time_ratio = ref.time.N / level.time.N;
  double worst = 0.0;
  for (std::size_t s = 0; s < level.steps.size(); ++s) {
    const std::size_t n = level.steps[s];
    const auto it = std::lower_bound(ref.steps.begin(), ref.steps.end(), n * time_ratio);
    if (it == ref.steps.end() || *it != n * time_ratio)
      throw NumericalError("EOC: reference snapshot missing for level step " + std::to_string(n));
    const PeriodicField& r = ref_fields[static_cast<std::size_t>(it - ref.steps.begin())];
    std::vector<double> diff(level.space.J);
    for (std::size_t i = 0; i < level.space.J; ++i)
      diff[i] = level_fields[s][static_cast<std::ptrdiff_t>(i)] -
                r[static_cast<std::ptrdiff_t>(i * space_ratio)];
    worst = std::max(worst, norm_h(PeriodicField(std::move(diff))));
  }
  return worst;
}

double fitted_order(const std::vector<EocLevel>& levels, double EocLevel::*field) {
  const double n = static_cast<double>(levels.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& l : levels) {
    const double x = std::log(l.h);
    const double y = std::log(l.*field);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> pair_orders(const std::vector<EocLevel>& levels, double EocLevel::*field) {
  std::vector<double> out;
  for (std::size_t l = 0; l + 1 < levels.size(); ++l)
    out.push_back(std::log2(levels[l].*field / levels[l + 1].*field));
  return out;
}

}  // namespace

EocReport run_eoc(const RunConfig& cfg, int levels) {
  validate(cfg);
  if (levels < 3) throw ConfigValidationError({"--levels: the ladder needs at least 3 levels"});

  const std::size_t finest_factor = std::size_t{1} << (levels - 1);
  const std::size_t J_f = cfg.J * finest_factor;
  const double k_f = cfg.k / static_cast<double>(finest_factor);
  EocReport rep;
  rep.reference_J = J_f * 8;
  rep.reference_k = k_f / 8.0;

  const RadiusLaw law(cfg.model);
  const TimeGrid tg_f = TimeGrid::from_increment(k_f, cfg.T);
  rep.finest_admissibility = check_admissibility(cfg.model, tg_f, law, GridSpec::with_points(J_f));
  if (!rep.finest_admissibility.pass())
    throw ConfigValidationError({"grid.k: the finest EOC level violates the existence conditions"});

  const RunConfig ref_cfg = level_config(cfg, rep.reference_J, rep.reference_k);
  const PeriodicField u0_ref = initial_height(ref_cfg);
  const double I0 = initial_mean(cfg);

  auto reference = std::async(std::launch::async, [&] {
    Trajectory t = run_level(ref_cfg, Scheme::CrankNicolson, 8);
    HeightPath hp = reconstruct_heights(t, law, u0_ref, I0);
    return std::make_pair(std::move(t), std::move(hp));
  });

  std::vector<std::future<LevelRuns>> futures;
  for (int l = 0; l < levels; ++l) {
    const std::size_t f = std::size_t{1} << l;
    const RunConfig c = level_config(cfg, cfg.J * f, cfg.k / static_cast<double>(f));
    futures.push_back(std::async(std::launch::async, [c, &law, I0] {
      LevelRuns r{run_level(c, Scheme::CrankNicolson, 1), run_level(c, Scheme::Newton, 1), {}, {}};
      const PeriodicField u0 = initial_height(c);
      r.cn_u = reconstruct_heights(r.cn, law, u0, I0);
      r.newton_u = reconstruct_heights(r.newton, law, u0, I0);
      return r;
    }));
  }

  const auto [ref, ref_u] = reference.get();
  for (int l = 0; l < levels; ++l) {
    const LevelRuns r = futures[static_cast<std::size_t>(l)].get();
    EocLevel e;
    e.J = r.cn.space.J;
    e.h = r.cn.space.h;
    e.k = r.cn.time.k;
    e.error_v_cn = ladder_error(r.cn, r.cn.snapshots, ref, ref.snapshots);
    e.error_u_cn = ladder_error(r.cn, r.cn_u.heights, ref, ref_u.heights);
    e.error_v_newton = ladder_error(r.newton, r.newton.snapshots, ref, ref.snapshots);
    e.error_u_newton = ladder_error(r.newton, r.newton_u.heights, ref, ref_u.heights);
    for (std::size_t s = 0; s < r.cn.snapshots.size(); ++s)
      e.newton_cn_difference =
          std::max(e.newton_cn_difference, norm_h(r.newton.snapshots[s] - r.cn.snapshots[s]));
    rep.levels.push_back(e);
  }

  rep.eoc_v_cn = pair_orders(rep.levels, &EocLevel::error_v_cn);
  rep.eoc_u_cn = pair_orders(rep.levels, &EocLevel::error_u_cn);
  rep.eoc_v_newton = pair_orders(rep.levels, &EocLevel::error_v_newton);
  rep.eoc_u_newton = pair_orders(rep.levels, &EocLevel::error_u_newton);
  rep.order_v_cn = fitted_order(rep.levels, &EocLevel::error_v_cn);
  rep.order_u_cn = fitted_order(rep.levels, &EocLevel::error_u_cn);
  rep.order_v_newton = fitted_order(rep.levels, &EocLevel::error_v_newton);
  rep.order_u_newton = fitted_order(rep.levels, &EocLevel::error_u_newton);
  return rep;
}

json EocReport::to_json() const {
  json ladder = json::array();
  for (const auto& l : levels)
    ladder.push_back({{"J", l.J},
                      {"h", l.h},
                      {"k", l.k},
                      {"error_v_cn", l.error_v_cn},
                      {"error_u_cn", l.error_u_cn},
                      {"error_v_newton", l.error_v_newton},
                      {"error_u_newton", l.error_u_newton},
                      {"newton_cn_difference", l.newton_cn_difference}});
  return {{"reference", {{"J", reference_J}, {"k", reference_k}, {"scheme", "crank-nicolson"}}},
          {"ladder", ladder},
          {"eoc_pairs",
           {{"v_cn", eoc_v_cn}, {"u_cn", eoc_u_cn}, {"v_newton", eoc_v_newton}, {"u_newton", eoc_u_newton}}},
          {"order",
           {{"v_cn", order_v_cn}, {"u_cn", order_u_cn}, {"v_newton", order_v_newton}, {"u_newton", order_u_newton}}},
          {"finest_admissibility", admissibility_json(finest_admissibility)}};
}

// --------------------------------------------------------- stability map

StabilityMap stability_map(const ModelParams& params, double R_min, double R_max,
                           std::size_t samples, int m_max) {
  if (!(R_min >= 0.0) || !(R_max > R_min) || samples < 2 || m_max < 2)
    throw DomainError("stability_map: need 0 <= R_min < R_max, samples >= 2, m_max >= 2");
  StabilityMap map{params, m_max, critical_radius(params), {}};
  for (std::size_t s = 0; s < samples; ++s) {
    StabilityRow row;
    row.R = R_min + (R_max - R_min) * static_cast<double>(s) / static_cast<double>(samples - 1);
    for (int m = 2; m <= m_max; ++m) row.neutral_delta.push_back(neutral_delta(m, row.R, params));
    if (row.R > 0.0) {
      const SpectralReport rep = spectral_report(row.R, params, m_max);
      row.unstable_modes = rep.unstable_modes;
      row.predicted_dominant = rep.predicted_dominant;
    }
    map.rows.push_back(std::move(row));
  }
  return map;
}

void write_stability_map(const StabilityMap& map, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  CsvTable t;
  t.header = {"R"};
  for (int m = 2; m <= map.m_max; ++m) t.header.push_back("delta_m" + std::to_string(m));
  t.header.push_back("unstable_count");
  t.header.push_back("predicted_dominant");
  json rows = json::array();
  for (const auto& r : map.rows) {
    std::vector<double> row{r.R};
    row.insert(row.end(), r.neutral_delta.begin(), r.neutral_delta.end());
    row.push_back(static_cast<double>(r.unstable_modes.size()));
    row.push_back(r.predicted_dominant ? *r.predicted_dominant : 0.0);
    t.rows.push_back(std::move(row));
    rows.push_back({{"R", r.R},
                    {"unstable_modes", r.unstable_modes},
                    {"predicted_dominant", optional_json(r.predicted_dominant)}});
  }
  write_csv(dir / "stability_map.csv", t);
  json j{{"params", params_json(map.params)},
         {"m_max", map.m_max},
         {"R_star", map.R_star},
         {"csv", "stability_map.csv"},
         {"rows", rows}};
  std::ofstream out(dir / "stability_map.json");
  if (!out) throw std::runtime_error("cannot write stability_map.json");
  out << j.dump(2) << '\n';
}

// ------------------------------------------------------ wavenumber suite

std::pair<double, double> mean_ode_residual(const Trajectory& traj, const RadiusLaw& law,
                                            const MeanPath& path) {
  const auto& p = law.params();
  const double k = traj.time.k;
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n <= traj.time.N; ++n) {
    const double R2 = traj.radius[n] * traj.radius[n];
    const double decay = (p.alpha - 1.0) / R2 * path.values[n];
    const double source = p.v_c / (4.0 * std::numbers::pi * R2) * traj.v_sq_integral[n];
    scale = std::max({scale, std::abs(decay), std::abs(source)});
    if (n == 0 || n == traj.time.N) continue;
    const double d = (path.values[n + 1] - path.values[n - 1]) / (2.0 * k);
    worst = std::max(worst, std::abs(d - (source - decay)));
  }
  return {worst, scale};
}

std::vector<SuiteRow> wavenumber_suite(std::size_t J) {
  const std::vector<std::pair<double, std::vector<int>>> cases{
      {6.0, {2, 3, 4, 5}}, {9.0, {3, 4, 5, 6}}, {12.0, {4, 5, 6, 7}},
      {15.0, {5, 6, 7, 8}}, {18.0, {6, 7, 8, 9}}};

  std::vector<std::future<SuiteRow>> futures;
  for (const auto& [R0, modes] : cases) {
    futures.push_back(std::async(std::launch::async, [R0 = R0, modes = modes, J] {
      SuiteRow row;
      row.R0 = R0;
      row.modes = modes;
      RunConfig cfg = wavenumber_config(R0, modes, J);
      cfg.output.stride = cfg.time_grid().N;  // keep the first and last snapshots only
      const RadiusLaw law(cfg.model);
      const SpectralReport at_R0 = spectral_report(R0, cfg.model, cfg.stability.m_max);
      row.unstable_at_R0 = at_R0.unstable_modes;
      row.predicted_at_R0 = at_R0.predicted_dominant;
      row.predicted_at_half_time =
          spectral_report(law.radius_at(0.5 * cfg.T), cfg.model, cfg.stability.m_max).predicted_dominant;

      const RunResult res = execute_run(cfg, false);
      if (!res.trajectory) {
        row.failure = res.failure;
        return row;
      }
      row.max_abs_mean = res.trajectory->max_abs_mean();
      row.measured = dominant_mode(res.heights->heights.back());
      std::tie(row.mean_ode_residual, row.mean_ode_scale) =
          mean_ode_residual(*res.trajectory, law, res.heights->mean);

      const auto& unstable = row.unstable_at_R0;
      bool ok = std::find(unstable.begin(), unstable.end(), *row.measured) != unstable.end();
      if (row.predicted_at_R0) {
        const auto it = std::find(modes.begin(), modes.end(), *row.predicted_at_R0);
        const bool seeded = it != modes.end() && cfg.initial.amplitudes[static_cast<std::size_t>(it - modes.begin())] != 0.0;
        if (seeded) ok = ok && *row.measured == *row.predicted_at_R0;
      }
      row.pass = ok;
      return row;
    }));
  }
  std::vector<SuiteRow> rows;
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

void write_suite(const std::vector<SuiteRow>& rows, std::size_t J,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  CsvTable t{{"R0", "predicted_at_R0", "predicted_at_half_time", "measured", "unstable_count", "pass"}, {}};
  json jr = json::array();
  for (const auto& r : rows) {
    t.rows.push_back({r.R0, r.predicted_at_R0 ? double(*r.predicted_at_R0) : 0.0,
                      r.predicted_at_half_time ? double(*r.predicted_at_half_time) : 0.0,
                      r.measured ? double(*r.measured) : 0.0,
                      static_cast<double>(r.unstable_at_R0.size()), r.pass ? 1.0 : 0.0});
    jr.push_back({{"R0", r.R0},
                  {"modes", r.modes},
                  {"unstable_at_R0", r.unstable_at_R0},
                  {"predicted_at_R0", optional_json(r.predicted_at_R0)},
                  {"predicted_at_half_time", optional_json(r.predicted_at_half_time)},
                  {"measured_dominant", optional_json(r.measured)},
                  {"max_abs_mean", r.max_abs_mean},
                  {"mean_ode_residual", r.mean_ode_residual},
                  {"mean_ode_scale", r.mean_ode_scale},
                  {"pass", r.pass},
                  {"failure", r.failure}});
  }
  write_csv(dir / "wavenumber_suite.csv", t);
  std::ofstream out(dir / "wavenumber_suite.json");
  if (!out) throw std::runtime_error("cannot write wavenumber_suite.json");
  out << json{{"J", J}, {"k", 0.01}, {"T", 100.0}, {"rows", jr}}.dump(2) << '\n';
}

}  // namespace ksring
