#ifndef WFL_TRAJECTORY_HPP
#define WFL_TRAJECTORY_HPP

#include <cstddef>
#include <vector>

namespace wfl {

/// Time-sampled solution path shared by the limit and viscous solvers.
/// Channels that a solver does not produce are left empty.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> z;
  std::vector<double> zdot;
  std::vector<double> energy;
  std::vector<double> dissipation_cum;

  // limit solver
  std::vector<double> z_tilde_minus;
  std::vector<double> z_tilde_plus;

  // viscous solver
  std::vector<double> xi;
  std::vector<double> delta_eps;
  /// Cumulative int_0^t (-dl/dt) z ds, the work term of the energy balance.
  std::vector<double> power_cum;

  std::size_t size() const { return times.size(); }
};

/// n + 1 equispaced points on [0, horizon]; last point is exactly horizon.
std::vector<double> uniform_grid(double horizon, std::size_t n);

/// Linear interpolation of channel values at time t (clamped to the ends).
double interpolate(const std::vector<double>& times,
                   const std::vector<double>& values, double t);

}  // namespace wfl

#endif
