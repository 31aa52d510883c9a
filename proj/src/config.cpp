#include "ksring/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ksring {

namespace pt = boost::property_tree;

ConfigValidationError::ConfigValidationError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Reads typed values out of the property tree and collects problems keyed by field path.
class Reader {
public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::vector<std::string>& problems() { return problems_; }

  void check_known(const std::map<std::string, std::set<std::string>>& schema) {
    for (const auto& [section, body] : tree_) {
      auto it = schema.find(section);
      if (it == schema.end()) {
        problems_.push_back(section + ": unknown section");
        continue;
      }
      for (const auto& [key, value] : body)
        if (!it->second.count(key)) problems_.push_back(section + "." + key + ": unknown key");
    }
  }

  std::optional<std::string> raw(const std::string& path) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  void real(const std::string& path, double& out) {
    if (auto s = raw(path)) {
      if (auto v = to_real(*s))
        out = *v;
      else
        problems_.push_back(path + ": expected a finite number, got '" + *s + "'");
    }
  }

  template <class Int>
  void integer(const std::string& path, Int& out) {
    if (auto s = raw(path)) {
      if (auto v = to_integer(*s))
        out = static_cast<Int>(*v);
      else
        problems_.push_back(path + ": expected an integer, got '" + *s + "'");
    }
  }

  void real_list(const std::string& path, std::vector<double>& out) {
    if (auto s = raw(path)) {
      out.clear();
      for (const auto& item : split_list(*s)) {
        if (auto v = to_real(item))
          out.push_back(*v);
        else
          problems_.push_back(path + ": expected a number, got '" + item + "'");
      }
    }
  }

  void int_list(const std::string& path, std::vector<int>& out) {
    if (auto s = raw(path)) {
      out.clear();
      for (const auto& item : split_list(*s)) {
        if (auto v = to_integer(item))
          out.push_back(static_cast<int>(*v));
        else
          problems_.push_back(path + ": expected an integer, got '" + item + "'");
      }
    }
  }

private:
  static std::optional<double> to_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  }

  static std::optional<long long> to_integer(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return v;
  }

  const pt::ptree& tree_;
  std::vector<std::string> problems_;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"model", {"delta", "alpha", "v_c"}},
      {"grid", {"J", "k", "T"}},
      {"initial", {"R0", "amplitudes", "modes", "I0"}},
      {"solver",
       {"jn", "newton_residual_tol", "linear_tol", "reference_tol", "max_iters", "v0"}},
      {"output", {"dir", "stride", "emit"}},
      {"stability", {"R_min", "R_max", "samples", "m_max"}},
  };
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParseError(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  Reader r(tree);
  r.check_known(schema());

  r.real("model.delta", cfg.model.delta);
  r.real("model.alpha", cfg.model.alpha);
  r.real("model.v_c", cfg.model.v_c);

  long long J = static_cast<long long>(cfg.J);
  r.integer("grid.J", J);
  if (J < 0) {
    r.problems().push_back("grid.J: must be positive");
    J = 0;
  }
  cfg.J = static_cast<std::size_t>(J);
  r.real("grid.k", cfg.k);
  r.real("grid.T", cfg.T);

  r.real("initial.R0", cfg.model.R0);
  r.real_list("initial.amplitudes", cfg.initial.amplitudes);
  r.int_list("initial.modes", cfg.initial.modes);
  if (tree.get_optional<std::string>("initial.I0")) {
    double I0 = 0.0;
    r.real("initial.I0", I0);
    cfg.initial.I0 = I0;
  }

  long long jn = static_cast<long long>(cfg.solver.newton_iters);
  r.integer("solver.jn", jn);
  if (jn < 1) r.problems().push_back("solver.jn: must be >= 1");
  cfg.solver.newton_iters = static_cast<std::size_t>(std::max(1LL, jn));
  r.real("solver.newton_residual_tol", cfg.solver.newton_residual_tol);
  r.real("solver.linear_tol", cfg.solver.linear_tol);
  r.real("solver.reference_tol", cfg.solver.reference_tol);
  long long max_iters = static_cast<long long>(cfg.solver.max_iters);
  r.integer("solver.max_iters", max_iters);
  if (max_iters < 1) r.problems().push_back("solver.max_iters: must be >= 1");
  cfg.solver.max_iters = static_cast<std::size_t>(std::max(1LL, max_iters));
  if (auto v0 = r.raw("solver.v0")) {
    if (*v0 == "analytic")
      cfg.v0_method = V0Method::Analytic;
    else if (*v0 == "centered" || *v0 == "centered-difference")
      cfg.v0_method = V0Method::CenteredDifference;
    else
      r.problems().push_back("solver.v0: expected 'analytic' or 'centered', got '" + *v0 + "'");
  }

  if (auto dir = r.raw("output.dir")) cfg.output.dir = *dir;
  long long stride = static_cast<long long>(cfg.output.stride);
  r.integer("output.stride", stride);
  if (stride < 1) r.problems().push_back("output.stride: must be >= 1");
  cfg.output.stride = static_cast<std::size_t>(std::max(1LL, stride));
  cfg.solver.snapshot_stride = cfg.output.stride;
  if (auto emit = r.raw("output.emit")) {
    cfg.output.v = cfg.output.u = cfg.output.curve = cfg.output.spectrum = cfg.output.means = false;
    for (const auto& item : split_list(*emit)) {
      if (item == "v") cfg.output.v = true;
      else if (item == "u") cfg.output.u = true;
      else if (item == "curve") cfg.output.curve = true;
      else if (item == "spectrum") cfg.output.spectrum = true;
      else if (item == "means") cfg.output.means = true;
      else r.problems().push_back("output.emit: unknown artifact '" + item + "'");
    }
  }

  r.real("stability.R_min", cfg.stability.R_min);
  r.real("stability.R_max", cfg.stability.R_max);
  long long samples = static_cast<long long>(cfg.stability.samples);
  r.integer("stability.samples", samples);
  if (samples < 2) r.problems().push_back("stability.samples: must be >= 2");
  cfg.stability.samples = static_cast<std::size_t>(std::max(2LL, samples));
  r.integer("stability.m_max", cfg.stability.m_max);

  if (!r.problems().empty()) throw ConfigValidationError(r.problems());
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const RunConfig& cfg) {
  std::vector<std::string> p;
  const auto& m = cfg.model;
  if (!(m.delta > 0.0)) p.push_back("model.delta: must be positive");
  if (!(m.alpha > 1.0)) p.push_back("model.alpha: must exceed 1");
  if (!(m.v_c > 0.0)) p.push_back("model.v_c: must be positive");
  if (!(m.R0 > 0.0)) p.push_back("initial.R0: must be positive");
  if (cfg.J < 8 || cfg.J % 2 != 0) p.push_back("grid.J: must be an even integer >= 8");
  if (!(cfg.k > 0.0)) p.push_back("grid.k: must be positive");
  if (!(cfg.T > 0.0)) p.push_back("grid.T: must be positive");
  if (cfg.k > 0.0 && cfg.T > 0.0) {
    const double steps = std::round(cfg.T / cfg.k);
    if (steps < 1.0 || std::abs(steps * cfg.k - cfg.T) > 1e-12 * cfg.T)
      p.push_back("grid.T: must be a positive integer multiple of grid.k");
  }
  const auto& ic = cfg.initial;
  if (ic.modes.empty()) p.push_back("initial.modes: must list at least one mode");
  if (ic.amplitudes.size() != ic.modes.size())
    p.push_back("initial.amplitudes: needs one amplitude per mode");
  std::set<int> seen;
  for (int mode : ic.modes) {
    if (mode < 2) p.push_back("initial.modes: mode " + std::to_string(mode) + " must be >= 2");
    if (!seen.insert(mode).second)
      p.push_back("initial.modes: mode " + std::to_string(mode) + " listed twice");
    if (cfg.J >= 8 && static_cast<std::size_t>(mode) >= cfg.J / 2)
      p.push_back("initial.modes: mode " + std::to_string(mode) + " not resolved by grid.J");
  }
  const auto& s = cfg.solver;
  if (s.newton_iters < 1) p.push_back("solver.jn: must be >= 1");
  if (!(s.linear_tol > 0.0)) p.push_back("solver.linear_tol: must be positive");
  if (!(s.reference_tol > 0.0)) p.push_back("solver.reference_tol: must be positive");
  if (s.newton_residual_tol < 0.0) p.push_back("solver.newton_residual_tol: must be >= 0");
  if (cfg.output.stride < 1) p.push_back("output.stride: must be >= 1");
  if (cfg.output.dir.empty()) p.push_back("output.dir: must not be empty");
  const auto& st = cfg.stability;
  if (!(st.R_min >= 0.0)) p.push_back("stability.R_min: must be >= 0");
  if (!(st.R_max > st.R_min)) p.push_back("stability.R_max: must exceed stability.R_min");
  if (st.samples < 2) p.push_back("stability.samples: must be >= 2");
  if (st.m_max < 2) p.push_back("stability.m_max: must be >= 2");
  if (!p.empty()) throw ConfigValidationError(std::move(p));
}

namespace {
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

std::string canonical_form(const RunConfig& cfg) {
  std::ostringstream os;
  os << "model.delta=" << num(cfg.model.delta) << "\nmodel.alpha=" << num(cfg.model.alpha)
     << "\nmodel.v_c=" << num(cfg.model.v_c) << "\ninitial.R0=" << num(cfg.model.R0)
     << "\ngrid.J=" << cfg.J << "\ngrid.k=" << num(cfg.k) << "\ngrid.T=" << num(cfg.T)
     << "\ninitial.amplitudes=";
  for (double a : cfg.initial.amplitudes) os << num(a) << ',';
  os << "\ninitial.modes=";
  for (int m : cfg.initial.modes) os << m << ',';
  os << "\ninitial.I0=" << (cfg.initial.I0 ? num(*cfg.initial.I0) : "auto")
     << "\nsolver.jn=" << cfg.solver.newton_iters
     << "\nsolver.newton_residual_tol=" << num(cfg.solver.newton_residual_tol)
     << "\nsolver.linear_tol=" << num(cfg.solver.linear_tol)
     << "\nsolver.reference_tol=" << num(cfg.solver.reference_tol)
     << "\nsolver.max_iters=" << cfg.solver.max_iters
     << "\nsolver.v0=" << (cfg.v0_method == V0Method::Analytic ? "analytic" : "centered")
     << "\noutput.stride=" << cfg.output.stride << "\nstability.R_min=" << num(cfg.stability.R_min)
     << "\nstability.R_max=" << num(cfg.stability.R_max)
     << "\nstability.samples=" << cfg.stability.samples << "\nstability.m_max=" << cfg.stability.m_max
     << '\n';
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_form(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig wavenumber_config(double R0, std::vector<int> modes, std::size_t J) {
  RunConfig cfg;
  cfg.model = ModelParams{4.0, 1.5, 0.001, R0};
  cfg.J = J;
  cfg.k = 0.01;
  cfg.T = 100.0;
  cfg.initial.amplitudes.assign(modes.size(), 0.1);
  cfg.initial.modes = std::move(modes);
  return cfg;
}

}  // namespace ksring
