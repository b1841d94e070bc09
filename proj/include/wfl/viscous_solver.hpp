#ifndef WFL_VISCOUS_SOLVER_HPP
#define WFL_VISCOUS_SOLVER_HPP

#include <cstddef>
#include <vector>

#include "wfl/limit_solver.hpp"
#include "wfl/models.hpp"
#include "wfl/profiles.hpp"
#include "wfl/trajectory.hpp"

namespace wfl {

/// The epsilon-perturbed system: energy Phi(z) - l(t) z + V_eps(z) with
/// Rayleigh dissipation eps^gamma/2 z'^2. The base limit system supplies
/// Phi, l and the strip used for diagnostics.
class WigglySystem {
 public:
  WigglySystem(LimitSystem base, BristleModel model, SurfaceProfile profile,
               double epsilon, double gamma = 1.0);

  const LimitSystem& base() const { return base_; }
  const WigglyPotential& potential() const { return potential_; }
  double epsilon() const { return potential_.epsilon(); }
  double gamma() const { return gamma_; }
  /// eps^gamma, the viscosity.
  double viscosity() const { return viscosity_; }
  /// min(1, gamma).
  double beta() const { return gamma_ < 1.0 ? gamma_ : 1.0; }

  /// E_eps(t, z).
  double energy(double t, double z) const;
  /// -D_z E_eps(t, z) = l(t) - Phi'(z) - V_eps'(z).
  double driving_force(double t, double z) const;

 private:
  LimitSystem base_;
  WigglyPotential potential_;
  double gamma_;
  double viscosity_;
};

/// z' = -D_z E_eps(t, z) / eps^gamma.
double rhs(const WigglySystem& system, double t, double z);

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  /// 0 selects eps^gamma / 2.
  double max_step = 0.0;
  bool dense_output = true;
  std::size_t max_steps = 50'000'000;
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Dormand-Prince 5(4) with step-size control. The dissipation
/// int eps^gamma z'^2 and the loading work int -l' z are carried as extra
/// quadrature components of the same RK pair, so they share its order and
/// its dense output. Results are sampled on `grid` (which must start at 0
/// and end at the horizon); without dense output only step endpoints are
/// stored.
Trajectory integrate(const WigglySystem& system, double z0,
                     const std::vector<double>& grid,
                     const IntegratorConfig& config = {},
                     IntegratorStats* stats = nullptr);

/// |E(T) + int 2R_eps - E(0) - int d_t E|.
double energy_balance_residual(const WigglySystem& system,
                               const Trajectory& trajectory);

/// Magnitude used to normalise energy residuals.
double energy_scale(const Trajectory& trajectory);

}  // namespace wfl

#endif
