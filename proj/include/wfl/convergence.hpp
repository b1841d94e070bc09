#ifndef WFL_CONVERGENCE_HPP
#define WFL_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfl/limit_solver.hpp"
#include "wfl/models.hpp"
#include "wfl/profiles.hpp"
#include "wfl/viscous_solver.hpp"

namespace wfl {

/// Everything an epsilon sweep shares across scales.
struct SweepSetup {
  LimitSystem limit;
  BristleModel model;
  SurfaceProfile profile;
  double gamma = 1.0;
  double z0 = 0.0;
  std::size_t grid_size = kDefaultGridSize;
  IntegratorConfig integrator;
};

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<double> sup_errors;
  /// dissipation_gaps[i][w] = |int 2R_eps - int R| on window w for epsilons[i].
  std::vector<std::vector<double>> dissipation_gaps;
  std::vector<std::pair<double, double>> windows;
  /// int R of the limit trajectory on each window.
  std::vector<double> limit_dissipation;
  std::optional<double> fitted_order;
  std::vector<double> runtimes;
  /// Set when a trajectory failed; rows then hold only the completed scales.
  std::optional<std::string> error;
};

/// Worker count for parallel sweeps: WFL_THREADS if set, else the hardware
/// concurrency, never more than `jobs`.
unsigned sweep_threads(std::size_t jobs);

/// Solves the limit problem once and the viscous problem for each epsilon
/// (in parallel), then measures sup_t |z_eps - z| on the limit grid and the
/// dissipation gap on each window. Every epsilon is validated before any
/// integration starts.
SweepReport run_sweep(const SweepSetup& setup, const std::vector<double>& epsilons,
                      const std::vector<std::pair<double, double>>& windows,
                      unsigned threads = 0);

/// Least-squares slope of log(err) against log(eps).
std::optional<double> fit_order(const std::vector<double>& epsilons,
                                const std::vector<double>& errors);

struct StripDiagnostics {
  std::vector<double> times;
  std::vector<double> delta;
  /// d(delta)/dt where delta > 0, else 0.
  std::vector<double> delta_rate;
  /// Smallest C with delta(t) <= delta(0) exp(-phi t / eps^gamma) + C eps^beta
  /// on the grid.
  double fitted_constant = 0.0;
};

/// Distance of a viscous trajectory to the elastic strip of its limit system.
StripDiagnostics strip_diagnostics(const WigglySystem& system,
                                   const Trajectory& trajectory);

}  // namespace wfl

#endif
