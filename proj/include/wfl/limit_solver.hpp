#ifndef WFL_LIMIT_SOLVER_HPP
#define WFL_LIMIT_SOLVER_HPP

#include <utility>
#include <vector>

#include "wfl/loading.hpp"
#include "wfl/trajectory.hpp"

namespace wfl {

/// Macroscopic spring with energy Phi(z) - l(t) z, l(t) = k_h (q(t) - L_h_rest),
/// and rate-independent dissipation R(v) = rho+ v (v >= 0), rho- v (v <= 0).
class LimitSystem {
 public:
  LimitSystem(double k_h, double L_h_rest, LoadingProgram loading,
              double rho_plus, double rho_minus);
  /// Same, with a non-quadratic uniformly convex Phi. k_h still scales l.
  LimitSystem(double k_h, double L_h_rest, LoadingProgram loading,
              double rho_plus, double rho_minus, StoredEnergy phi);

  double k_h() const { return k_h_; }
  double L_h_rest() const { return L_h_rest_; }
  double rho_plus() const { return rho_plus_; }
  double rho_minus() const { return rho_minus_; }
  const LoadingProgram& loading() const { return loading_; }
  const StoredEnergy& stored_energy() const { return phi_; }
  double horizon() const { return loading_.horizon(); }

  double load(double t) const;       // l(t)
  double load_rate(double t) const;  // l'(t)
  /// Lipschitz constant of l.
  double load_lipschitz() const;

  /// E(t, z) = Phi(z) - l(t) z.
  double energy(double t, double z) const;
  /// -D_z E(t, z) = l(t) - Phi'(z).
  double driving_force(double t, double z) const;
  /// R(v).
  double dissipation_rate(double v) const;

  LimitSystem with_loading(LoadingProgram loading) const;

 private:
  double k_h_;
  double L_h_rest_;
  LoadingProgram loading_;
  double rho_plus_;
  double rho_minus_;
  StoredEnergy phi_;
};

/// (z~-(t), z~+(t)) = ((Phi')^-1(l - rho+), (Phi')^-1(l - rho-)).
std::pair<double, double> elastic_strip(const LimitSystem& system, double t);

/// Play-operator time stepping: z_{n+1} = clamp(z_n, z~-(t_{n+1}), z~+(t_{n+1})).
/// The grid must start at 0 and increase strictly.
Trajectory solve_limit(const LimitSystem& system, double z0,
                       const std::vector<double>& grid);

/// int_{t1}^{t2} R(z') dt from the state increments of a limit trajectory.
double dissipation_limit(const LimitSystem& system, const Trajectory& trajectory,
                         double t1, double t2);

inline constexpr std::size_t kDefaultGridSize = 4096;

}  // namespace wfl

#endif
