#include "wfl/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfl/error.hpp"
#include "wfl/numerics.hpp"

namespace wfl {

LimitSystem::LimitSystem(double k_h, double L_h_rest, LoadingProgram loading,
                         double rho_plus, double rho_minus)
    : LimitSystem(k_h, L_h_rest, std::move(loading), rho_plus, rho_minus,
                  StoredEnergy::quadratic(k_h)) {}

LimitSystem::LimitSystem(double k_h, double L_h_rest, LoadingProgram loading,
                         double rho_plus, double rho_minus, StoredEnergy phi)
    : k_h_(k_h),
      L_h_rest_(L_h_rest),
      loading_(std::move(loading)),
      rho_plus_(rho_plus),
      rho_minus_(rho_minus),
      phi_(std::move(phi)) {
  if (!(k_h_ > 0.0)) {
    throw Error(ErrorKind::InvalidSystem, "k_h must be positive");
  }
  if (!(rho_minus_ < 0.0 && 0.0 < rho_plus_)) {
    throw Error(ErrorKind::InvalidSystem, "need rho- < 0 < rho+");
  }
}

double LimitSystem::load(double t) const {
  return k_h_ * (loading_.q(t) - L_h_rest_);
}

double LimitSystem::load_rate(double t) const { return k_h_ * loading_.dq(t); }

double LimitSystem::load_lipschitz() const { return k_h_ * loading_.lipschitz(); }

double LimitSystem::energy(double t, double z) const {
  return phi_(z) - load(t) * z;
}

double LimitSystem::driving_force(double t, double z) const {
  return load(t) - phi_.derivative(z);
}

double LimitSystem::dissipation_rate(double v) const {
  return v >= 0.0 ? rho_plus_ * v : rho_minus_ * v;
}

LimitSystem LimitSystem::with_loading(LoadingProgram loading) const {
  return LimitSystem(k_h_, L_h_rest_, std::move(loading), rho_plus_, rho_minus_,
                     phi_);
}

std::pair<double, double> elastic_strip(const LimitSystem& system, double t) {
  const double l = system.load(t);
  const auto& phi = system.stored_energy();
  return {phi.derivative_inverse(l - system.rho_plus()),
          phi.derivative_inverse(l - system.rho_minus())};
}

Trajectory solve_limit(const LimitSystem& system, double z0,
                       const std::vector<double>& grid) {
  if (grid.size() < 2 || grid.front() != 0.0) {
    throw Error(ErrorKind::Domain, "time grid must start at 0 with >= 2 points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::Domain, "time grid must be strictly increasing");
    }
  }
  const auto [lo0, hi0] = elastic_strip(system, 0.0);
  if (!(z0 >= lo0 && z0 <= hi0)) {
    throw Error(ErrorKind::InvalidInitialState,
                "initial state " + std::to_string(z0) + " outside strip [" +
                    std::to_string(lo0) + ", " + std::to_string(hi0) + "]");
  }

  const std::size_t n = grid.size();
  Trajectory tr;
  tr.times = grid;
  tr.z.resize(n);
  tr.zdot.resize(n);
  tr.energy.resize(n);
  tr.dissipation_cum.resize(n);
  tr.z_tilde_minus.resize(n);
  tr.z_tilde_plus.resize(n);

  tr.z[0] = z0;
  tr.z_tilde_minus[0] = lo0;
  tr.z_tilde_plus[0] = hi0;
  tr.dissipation_cum[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto [lo, hi] = elastic_strip(system, grid[i]);
    tr.z_tilde_minus[i] = lo;
    tr.z_tilde_plus[i] = hi;
    tr.z[i] = numerics::clamp(tr.z[i - 1], lo, hi);
    const double dz = tr.z[i] - tr.z[i - 1];
    tr.dissipation_cum[i] = tr.dissipation_cum[i - 1] + system.dissipation_rate(dz);
    tr.zdot[i] = dz / (grid[i] - grid[i - 1]);
  }
  tr.zdot[0] = tr.zdot[1];
  for (std::size_t i = 0; i < n; ++i) tr.energy[i] = system.energy(grid[i], tr.z[i]);
  return tr;
}

double dissipation_limit(const LimitSystem& system, const Trajectory& tr,
                         double t1, double t2) {
  if (!(t1 < t2)) throw Error(ErrorKind::Domain, "need t1 < t2");
  if (t1 < tr.times.front() || t2 > tr.times.back()) {
    throw Error(ErrorKind::Domain, "window outside the trajectory horizon");
  }
  double total = 0.0;
  double prev = interpolate(tr.times, tr.z, t1);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.times[i] <= t1) continue;
    if (tr.times[i] >= t2) break;
    total += system.dissipation_rate(tr.z[i] - prev);
    prev = tr.z[i];
  }
  total += system.dissipation_rate(interpolate(tr.times, tr.z, t2) - prev);
  return total;
}

}  // namespace wfl
