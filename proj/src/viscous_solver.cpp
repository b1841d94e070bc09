#include "wfl/viscous_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "wfl/error.hpp"

namespace wfl {

WigglySystem::WigglySystem(LimitSystem base, BristleModel model,
                           SurfaceProfile profile, double epsilon, double gamma)
    : base_(std::move(base)),
      potential_(std::move(model), std::move(profile), epsilon),
      gamma_(gamma),
      viscosity_(std::pow(epsilon, gamma)) {
  if (!(gamma_ > 0.0)) {
    throw Error(ErrorKind::InvalidSystem, "gamma must be positive");
  }
}

double WigglySystem::energy(double t, double z) const {
  return base_.energy(t, z) + potential_.energy(z);
}

double WigglySystem::driving_force(double t, double z) const {
  return base_.driving_force(t, z) - potential_.force(z);
}

double rhs(const WigglySystem& system, double t, double z) {
  return system.driving_force(t, z) / system.viscosity();
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

// z, cumulative 2R_eps, cumulative -l' z
constexpr std::size_t kDim = 3;
using State = std::array<double, kDim>;

struct Dense {
  std::array<State, 5> r;
  double t0 = 0.0, h = 0.0;

  double value(std::size_t c, double t) const {
    const double s = (t - t0) / h, u = 1.0 - s;
    return r[0][c] + s * (r[1][c] + u * (r[2][c] + s * (r[3][c] + u * r[4][c])));
  }
  double derivative(std::size_t c, double t) const {
    const double s = (t - t0) / h, u = 1.0 - s;
    const double in1 = r[3][c] + u * r[4][c];
    const double din1 = -r[4][c];
    const double in2 = r[2][c] + s * in1;
    const double din2 = in1 + s * din1;
    const double in3 = r[1][c] + u * in2;
    const double din3 = -in2 + u * din2;
    return (in3 + s * din3) / h;
  }
};

}  // namespace

Trajectory integrate(const WigglySystem& system, double z0,
                     const std::vector<double>& grid,
                     const IntegratorConfig& config, IntegratorStats* stats_out) {
  if (!std::isfinite(z0)) {
    throw Error(ErrorKind::Domain, "initial state must be finite");
  }
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0)) {
    throw Error(ErrorKind::Config, "integrator tolerances must be positive");
  }
  if (grid.size() < 2 || grid.front() != 0.0) {
    throw Error(ErrorKind::Domain, "output grid must start at 0 with >= 2 points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::Domain, "output grid must be strictly increasing");
    }
  }
  const double visc = system.viscosity();
  const double hcap = 0.5 * visc;
  double hmax = config.max_step > 0.0 ? config.max_step : hcap;
  if (hmax > hcap * (1.0 + 1e-12)) {
    throw Error(ErrorKind::Config,
                "max step must not exceed eps^gamma/2 to resolve the boundary layer");
  }
  const double T = grid.back();
  const LimitSystem& base = system.base();

  IntegratorStats stats;
  auto f = [&](double t, const State& y) {
    ++stats.rhs_evaluations;
    const double v = rhs(system, t, y[0]);
    return State{v, visc * v * v, -base.load_rate(t) * y[0]};
  };

  Trajectory tr;
  auto record = [&](double t, double z, double zdot, double diss, double power) {
    const auto [lo, hi] = elastic_strip(base, t);
    tr.times.push_back(t);
    tr.z.push_back(z);
    tr.zdot.push_back(zdot);
    tr.xi.push_back(system.driving_force(t, z));
    tr.energy.push_back(system.energy(t, z));
    tr.dissipation_cum.push_back(diss);
    tr.power_cum.push_back(power);
    tr.delta_eps.push_back(z < lo ? lo - z : (z > hi ? z - hi : 0.0));
  };

  double t = 0.0;
  State y{z0, 0.0, 0.0};
  State k1 = f(t, y);
  record(0.0, z0, k1[0], 0.0, 0.0);
  std::size_t next = 1;

  auto scale = [&](double a, double b) {
    return config.abs_tol + config.rel_tol * std::max(std::abs(a), std::abs(b));
  };

  // initial step from the usual derivative-size heuristic
  double h;
  {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t c = 0; c < kDim; ++c) {
      const double sc = scale(y[c], y[c]);
      d0 += (y[c] / sc) * (y[c] / sc);
      d1n += (k1[c] / sc) * (k1[c] / sc);
    }
    d0 = std::sqrt(d0 / kDim);
    d1n = std::sqrt(d1n / kDim);
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min({h, hmax, T});
  }
  const double hmin = 1e-14 * T;

  Dense dense;
  while (t < T) {
    if (stats.accepted + stats.rejected >= config.max_steps) {
      std::ostringstream os;
      os << "step budget exhausted at t = " << t << ", z = " << y[0];
      throw Error(ErrorKind::StiffnessFailure, os.str());
    }
    bool last = false;
    if (t + h >= T) {
      h = T - t;
      last = true;
    }
    State y2, y3, y4, y5, y6, y7;
    for (std::size_t c = 0; c < kDim; ++c) y2[c] = y[c] + h * a21 * k1[c];
    const State k2 = f(t + c2 * h, y2);
    for (std::size_t c = 0; c < kDim; ++c)
      y3[c] = y[c] + h * (a31 * k1[c] + a32 * k2[c]);
    const State k3 = f(t + c3 * h, y3);
    for (std::size_t c = 0; c < kDim; ++c)
      y4[c] = y[c] + h * (a41 * k1[c] + a42 * k2[c] + a43 * k3[c]);
    const State k4 = f(t + c4 * h, y4);
    for (std::size_t c = 0; c < kDim; ++c)
      y5[c] = y[c] + h * (a51 * k1[c] + a52 * k2[c] + a53 * k3[c] + a54 * k4[c]);
    const State k5 = f(t + c5 * h, y5);
    for (std::size_t c = 0; c < kDim; ++c)
      y6[c] = y[c] + h * (a61 * k1[c] + a62 * k2[c] + a63 * k3[c] + a64 * k4[c] +
                          a65 * k5[c]);
    const double tnew = last ? T : t + h;
    const State k6 = f(t + h, y6);
    for (std::size_t c = 0; c < kDim; ++c)
      y7[c] = y[c] + h * (a71 * k1[c] + a73 * k3[c] + a74 * k4[c] + a75 * k5[c] +
                          a76 * k6[c]);
    const State k7 = f(tnew, y7);

    double err = 0.0;
    for (std::size_t c = 0; c < kDim; ++c) {
      const double e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] +
                            e6 * k6[c] + e7 * k7[c]);
      const double r = e / scale(y[c], y7[c]);
      err += r * r;
    }
    err = std::sqrt(err / kDim);
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      ++stats.accepted;
      if (config.dense_output) {
        dense.t0 = t;
        dense.h = h;
        for (std::size_t c = 0; c < kDim; ++c) {
          const double ydiff = y7[c] - y[c];
          const double bspl = h * k1[c] - ydiff;
          dense.r[0][c] = y[c];
          dense.r[1][c] = ydiff;
          dense.r[2][c] = bspl;
          dense.r[3][c] = ydiff - h * k7[c] - bspl;
          dense.r[4][c] = h * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] + d5 * k5[c] +
                               d6 * k6[c] + d7 * k7[c]);
        }
        while (next < grid.size() && grid[next] <= tnew) {
          const double tg = grid[next];
          if (tg == tnew) {
            record(tg, y7[0], k7[0], y7[1], y7[2]);
          } else {
            record(tg, dense.value(0, tg), dense.derivative(0, tg),
                   dense.value(1, tg), dense.value(2, tg));
          }
          ++next;
        }
      } else {
        record(tnew, y7[0], k7[0], y7[1], y7[2]);
      }
      t = tnew;
      y = y7;
      k1 = k7;
      const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 10.0;
      h = std::min(hmax, h * std::clamp(fac, 0.2, 10.0));
    } else {
      ++stats.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      if (h < hmin) {
        std::ostringstream os;
        os.precision(17);
        os << "step size underflow (h = " << h << ") at t = " << t
           << ", z = " << y[0] << ", z' = " << k1[0];
        throw Error(ErrorKind::StiffnessFailure, os.str());
      }
    }
  }
  if (stats_out) *stats_out = stats;
  return tr;
}

double energy_balance_residual(const WigglySystem& system, const Trajectory& tr) {
  const std::size_t n = tr.size();
  const double e0 = system.energy(tr.times.front(), tr.z.front());
  const double e1v = system.energy(tr.times.back(), tr.z.back());
  return std::abs(e1v + tr.dissipation_cum[n - 1] - e0 - tr.power_cum[n - 1]);
}

double energy_scale(const Trajectory& tr) {
  double s = 0.0;
  for (double e : tr.energy) s = std::max(s, std::abs(e));
  if (!tr.dissipation_cum.empty()) s = std::max(s, std::abs(tr.dissipation_cum.back()));
  if (!tr.power_cum.empty()) s = std::max(s, std::abs(tr.power_cum.back()));
  return s > 0.0 ? s : 1.0;
}

}  // namespace wfl
