#include "wfl/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wfl/error.hpp"

namespace wfl::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Config, where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& where, const char* key,
              double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + "." + key, "must be finite");
  return x;
}

double required_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return number(obj, where, key, 0.0);
}

long long integer(const json& obj, const std::string& where, const char* key,
                  long long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<long long>();
}

std::string kind_of(const json& obj, const std::string& where) {
  if (!obj.contains("kind") || !obj.at("kind").is_string())
    fail(where, "missing string key 'kind'");
  return obj.at("kind").get<std::string>();
}

void positive(double x, const std::string& where) {
  if (!(x > 0.0)) fail(where, "must be positive");
}

SurfaceProfile parse_profile(const json& p) {
  const std::string kind = kind_of(p, "profile");
  if (kind == "sinusoid") {
    check_keys(p, "profile", {"kind", "omega", "amplitude", "phase"});
    if (p.contains("omega") == p.contains("amplitude"))
      fail("profile", "give exactly one of 'omega' or 'amplitude'");
    if (p.contains("omega")) {
      if (p.contains("phase")) fail("profile", "'phase' needs 'amplitude'");
      double omega = number(p, "profile", "omega", 0.0);
      positive(omega, "profile.omega");
      return SurfaceProfile::sinusoid_with_slope(omega);
    }
    return SurfaceProfile::sinusoid(number(p, "profile", "amplitude", 0.0),
                                    number(p, "profile", "phase", 0.0));
  }
  if (kind == "fourier") {
    check_keys(p, "profile", {"kind", "terms"});
    if (!p.contains("terms") || !p.at("terms").is_array())
      fail("profile", "missing array 'terms'");
    std::vector<FourierTerm> terms;
    int i = 0;
    for (const json& t : p.at("terms")) {
      const std::string where = "profile.terms[" + std::to_string(i++) + "]";
      check_keys(t, where, {"amplitude", "harmonic", "phase"});
      FourierTerm term;
      term.amplitude = required_number(t, where, "amplitude");
      term.harmonic = static_cast<int>(integer(t, where, "harmonic", 1));
      term.phase = number(t, where, "phase", 0.0);
      terms.push_back(term);
    }
    return SurfaceProfile::fourier(std::move(terms));
  }
  fail("profile.kind", "expected 'sinusoid' or 'fourier', got '" + kind + "'");
}

BristleModel parse_model(const json& m) {
  const std::string kind = kind_of(m, "model");
  if (kind == "vertical") {
    check_keys(m, "model", {"kind", "k", "L_rest", "h"});
    VerticalSpring s;
    s.k = number(m, "model", "k", s.k);
    s.L_rest = number(m, "model", "L_rest", s.L_rest);
    s.h = number(m, "model", "h", s.h);
    return s;
  }
  if (kind == "slanted") {
    check_keys(m, "model", {"kind", "k", "L_rest", "h", "theta"});
    SlantedSpring s;
    s.k = number(m, "model", "k", s.k);
    s.L_rest = number(m, "model", "L_rest", s.L_rest);
    s.h = number(m, "model", "h", s.h);
    s.theta = required_number(m, "model", "theta");
    return s;
  }
  if (kind == "angular") {
    check_keys(m, "model", {"kind", "k", "L", "h", "theta_rest"});
    AngularSpring s;
    s.k = number(m, "model", "k", s.k);
    s.L = number(m, "model", "L", s.L);
    s.h = number(m, "model", "h", s.h);
    s.theta_rest = number(m, "model", "theta_rest", s.theta_rest);
    return s;
  }
  fail("model.kind", "expected 'vertical', 'slanted' or 'angular', got '" + kind + "'");
}

LoadingProgram parse_loading(const json& l) {
  const std::string kind = kind_of(l, "loading");
  if (kind == "ramp") {
    check_keys(l, "loading", {"kind", "q0", "rate", "T"});
    double T = number(l, "loading", "T", 2.0);
    positive(T, "loading.T");
    return LoadingProgram::ramp(number(l, "loading", "q0", 0.0),
                                number(l, "loading", "rate", 1.0), T);
  }
  if (kind == "sinusoid") {
    check_keys(l, "loading", {"kind", "mean", "amplitude", "omega", "phase", "T"});
    double T = required_number(l, "loading", "T");
    positive(T, "loading.T");
    return LoadingProgram::sinusoid(number(l, "loading", "mean", 0.0),
                                    required_number(l, "loading", "amplitude"),
                                    required_number(l, "loading", "omega"),
                                    number(l, "loading", "phase", 0.0), T);
  }
  if (kind == "piecewise") {
    check_keys(l, "loading", {"kind", "knots", "blend"});
    if (!l.contains("knots") || !l.at("knots").is_array())
      fail("loading", "missing array 'knots'");
    std::vector<std::pair<double, double>> knots;
    for (const json& k : l.at("knots")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
        fail("loading.knots", "each knot must be [t, q]");
      knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    return LoadingProgram::smoothed_piecewise_linear(
        std::move(knots), number(l, "loading", "blend", 0.0));
  }
  fail("loading.kind", "expected 'ramp', 'sinusoid' or 'piecewise', got '" + kind + "'");
}

void parse_simulation(const json& s, SimulationSpec& sim) {
  check_keys(s, "simulation",
             {"epsilons", "gamma", "z0", "rel_tol", "abs_tol", "grid", "windows"});
  if (s.contains("epsilons")) {
    const json& e = s.at("epsilons");
    if (!e.is_array() || e.empty())
      fail("simulation.epsilons", "expected a non-empty array");
    sim.epsilons.clear();
    for (const json& v : e) {
      if (!v.is_number()) fail("simulation.epsilons", "expected numbers");
      sim.epsilons.push_back(v.get<double>());
    }
  }
  sim.gamma = number(s, "simulation", "gamma", sim.gamma);
  sim.z0 = number(s, "simulation", "z0", sim.z0);
  sim.rel_tol = number(s, "simulation", "rel_tol", sim.rel_tol);
  sim.abs_tol = number(s, "simulation", "abs_tol", sim.abs_tol);
  long long grid = integer(s, "simulation", "grid", static_cast<long long>(sim.grid));
  if (grid < 2) fail("simulation.grid", "needs at least 2 intervals");
  sim.grid = static_cast<std::size_t>(grid);
  if (s.contains("windows")) {
    const json& w = s.at("windows");
    if (!w.is_array()) fail("simulation.windows", "expected an array");
    for (const json& pair : w) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        fail("simulation.windows", "each window must be [t1, t2]");
      sim.windows.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  }
}

void validate_config(ExperimentConfig& c) {
  try {
    c.extrema = derivative_extrema(c.profile);
  } catch (const Error& e) {
    fail("profile", e.what());
  }
  try {
    check_model(c.model);
  } catch (const Error& e) {
    fail("model", e.what());
  }
  AdmissibilityReport report = validate(c.model, c.extrema);
  if (!report.admissible())
    fail("model", "inadmissible for this profile: " + report.failures());
  try {
    c.coefficients = coefficients(c.model, c.profile);
  } catch (const Error& e) {
    fail("model", e.what());
  }

  positive(c.k_h, "system.k_h");
  const SimulationSpec& sim = c.simulation;
  positive(sim.gamma, "simulation.gamma");
  positive(sim.rel_tol, "simulation.rel_tol");
  positive(sim.abs_tol, "simulation.abs_tol");
  for (double eps : sim.epsilons) check_epsilon(c, eps);
  const double T = c.loading.horizon();
  for (auto [a, b] : sim.windows) {
    if (!(a >= 0.0 && b <= T && a < b))
      fail("simulation.windows", "window outside [0, T] or empty");
  }
  auto [lo, hi] = elastic_strip(c.limit_system(), 0.0);
  if (sim.z0 < lo || sim.z0 > hi) {
    std::ostringstream msg;
    msg << "z0 = " << sim.z0 << " outside the elastic strip [" << lo << ", "
        << hi << "] at t = 0";
    fail("simulation.z0", msg.str());
  }

  if (c.sweep_theta.n < 2) fail("sweep_theta.n", "needs at least 2 points");
  if (c.perceived_samples < 2) fail("perceived.n", "needs at least 2 samples");
  if (c.k_table.n < 2) fail("k_table.n", "needs at least 2 points");
  if (c.k_table.xi_min && c.k_table.xi_max && !(*c.k_table.xi_min < *c.k_table.xi_max))
    fail("k_table", "xi_min must be below xi_max");
}

}  // namespace

LimitSystem ExperimentConfig::limit_system() const {
  return LimitSystem(k_h, L_h_rest, loading, coefficients.rho_plus,
                     coefficients.rho_minus);
}

IntegratorConfig ExperimentConfig::integrator() const {
  IntegratorConfig cfg;
  cfg.rel_tol = simulation.rel_tol;
  cfg.abs_tol = simulation.abs_tol;
  return cfg;
}

std::vector<std::pair<double, double>> ExperimentConfig::windows() const {
  if (!simulation.windows.empty()) return simulation.windows;
  return {{0.0, loading.horizon()}};
}

void check_epsilon(const ExperimentConfig& config, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream msg;
    msg << "epsilon must be positive, got " << epsilon;
    throw Error(ErrorKind::Config, msg.str());
  }
  const double bound = epsilon_validity_bound(config.model, config.extrema);
  if (epsilon * config.profile.amplitude_bound() >= bound) {
    std::ostringstream msg;
    msg << "epsilon = " << epsilon << " too large: eps*max|w| = "
        << epsilon * config.profile.amplitude_bound() << " must stay below "
        << bound;
    throw Error(ErrorKind::Config, msg.str());
  }
  try {
    WigglyPotential(config.model, config.profile, epsilon);
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, std::string("epsilon: ") + e.what());
  }
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  validate_config(c);
  return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"profile", "model", "system", "loading", "simulation", "sweep_theta",
              "nap", "perceived", "k_table", "output"});

  ExperimentConfig c;
  try {
    if (root.contains("profile")) c.profile = parse_profile(root.at("profile"));
    if (root.contains("model")) c.model = parse_model(root.at("model"));
    if (root.contains("loading")) c.loading = parse_loading(root.at("loading"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, e.what());
  }
  if (root.contains("system")) {
    const json& s = root.at("system");
    check_keys(s, "system", {"k_h", "L_h_rest"});
    c.k_h = number(s, "system", "k_h", c.k_h);
    c.L_h_rest = number(s, "system", "L_h_rest", c.L_h_rest);
  }
  if (root.contains("simulation")) parse_simulation(root.at("simulation"), c.simulation);
  if (root.contains("sweep_theta")) {
    const json& s = root.at("sweep_theta");
    check_keys(s, "sweep_theta", {"n", "theta_min", "theta_max"});
    c.sweep_theta.n = static_cast<int>(integer(s, "sweep_theta", "n", c.sweep_theta.n));
    if (s.contains("theta_min"))
      c.sweep_theta.theta_min = number(s, "sweep_theta", "theta_min", 0.0);
    if (s.contains("theta_max"))
      c.sweep_theta.theta_max = number(s, "sweep_theta", "theta_max", 0.0);
  }
  if (root.contains("nap")) {
    const json& s = root.at("nap");
    check_keys(s, "nap", {"theta_with"});
    c.nap_theta_with = required_number(s, "nap", "theta_with");
  }
  if (root.contains("perceived")) {
    const json& s = root.at("perceived");
    check_keys(s, "perceived", {"n"});
    c.perceived_samples = static_cast<int>(integer(s, "perceived", "n", c.perceived_samples));
  }
  if (root.contains("k_table")) {
    const json& s = root.at("k_table");
    check_keys(s, "k_table", {"xi_min", "xi_max", "n"});
    if (s.contains("xi_min")) c.k_table.xi_min = number(s, "k_table", "xi_min", 0.0);
    if (s.contains("xi_max")) c.k_table.xi_max = number(s, "k_table", "xi_max", 0.0);
    long long n = integer(s, "k_table", "n", static_cast<long long>(c.k_table.n));
    if (n < 2) fail("k_table.n", "needs at least 2 points");
    c.k_table.n = static_cast<std::size_t>(n);
  }
  if (root.contains("output")) {
    const json& s = root.at("output");
    check_keys(s, "output", {"dir", "svg"});
    if (s.contains("dir")) {
      if (!s.at("dir").is_string()) fail("output.dir", "expected a string");
      c.output.dir = s.at("dir").get<std::string>();
    }
    if (s.contains("svg")) {
      if (!s.at("svg").is_boolean()) fail("output.svg", "expected a boolean");
      c.output.svg = s.at("svg").get<bool>();
    }
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace wfl::app
