#ifndef WFL_APP_CONFIG_HPP
#define WFL_APP_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfl/limit_solver.hpp"
#include "wfl/models.hpp"
#include "wfl/profiles.hpp"
#include "wfl/viscous_solver.hpp"

namespace wfl::app {

struct SimulationSpec {
  std::vector<double> epsilons{0.1, 0.05, 0.02, 0.01, 0.005};
  double gamma = 1.0;
  double z0 = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  std::size_t grid = kDefaultGridSize;
  /// Empty means the single window [0, T].
  std::vector<std::pair<double, double>> windows;
};

struct ThetaSweepSpec {
  int n = 50;
  /// Unset bounds default to 0.01 inside the admissible range.
  std::optional<double> theta_min;
  std::optional<double> theta_max;
};

struct KTableSpec {
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  std::size_t n = 201;
};

struct OutputSpec {
  std::filesystem::path dir = ".";
  bool svg = false;
};

/// A fully validated experiment. Every field has a default so an empty JSON
/// object describes the canonical vertical-spring ramp.
struct ExperimentConfig {
  SurfaceProfile profile = SurfaceProfile::sinusoid_with_slope(0.1);
  DerivativeExtrema extrema;
  BristleModel model = VerticalSpring{};
  FrictionCoefficients coefficients;

  double k_h = 1.0;
  double L_h_rest = 0.0;
  LoadingProgram loading = LoadingProgram::ramp(0.0, 1.0, 2.0);

  SimulationSpec simulation;
  ThetaSweepSpec sweep_theta;
  std::optional<double> nap_theta_with;
  int perceived_samples = 1024;
  KTableSpec k_table;
  OutputSpec output;

  LimitSystem limit_system() const;
  IntegratorConfig integrator() const;
  std::vector<std::pair<double, double>> windows() const;
};

/// Checks a scale against the model's validity bound and builds the
/// potential once to catch finite-epsilon geometry failures.
void check_epsilon(const ExperimentConfig& config, double epsilon);

/// Parses and validates; every failure is an Error of kind Config whose
/// message names the offending key.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig default_config();

}  // namespace wfl::app

#endif
