#include "wfl/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "wfl/error.hpp"

namespace wfl {

unsigned sweep_threads(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("WFL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = 1;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

std::optional<double> fit_order(const std::vector<double>& eps,
                                const std::vector<double>& err) {
  if (eps.size() < 2 || eps.size() != err.size()) return std::nullopt;
  const double n = static_cast<double>(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

SweepReport run_sweep(const SweepSetup& setup, const std::vector<double>& epsilons,
                      const std::vector<std::pair<double, double>>& windows,
                      unsigned threads) {
  if (epsilons.empty()) throw Error(ErrorKind::Config, "empty epsilon list");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1])) {
      throw Error(ErrorKind::Config, "epsilons must be strictly decreasing");
    }
  }
  const double T = setup.limit.horizon();
  for (const auto& [a, b] : windows) {
    if (!(a >= 0.0 && a < b && b <= T)) {
      throw Error(ErrorKind::Config, "dissipation windows must satisfy 0 <= t1 < t2 <= T");
    }
  }
  // fail fast: construct every system before integrating anything
  std::vector<WigglySystem> systems;
  systems.reserve(epsilons.size());
  for (double eps : epsilons) {
    systems.emplace_back(setup.limit, setup.model, setup.profile, eps, setup.gamma);
  }

  const auto grid = uniform_grid(T, setup.grid_size);
  const Trajectory limit = solve_limit(setup.limit, setup.z0, grid);

  SweepReport report;
  report.windows = windows;
  for (const auto& [a, b] : windows) {
    report.limit_dissipation.push_back(dissipation_limit(setup.limit, limit, a, b));
  }

  struct Row {
    bool done = false;
    double sup_error = 0.0;
    std::vector<double> gaps;
    double runtime = 0.0;
    std::string error;
  };
  std::vector<Row> rows(epsilons.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> abort{false};

  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= epsilons.size() || abort.load()) return;
      Row& row = rows[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        const Trajectory tr = integrate(systems[i], setup.z0, grid, setup.integrator);
        double sup = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
          sup = std::max(sup, std::abs(tr.z[k] - limit.z[k]));
        }
        row.sup_error = sup;
        for (std::size_t w = 0; w < windows.size(); ++w) {
          const auto [a, b] = windows[w];
          const double visc = interpolate(tr.times, tr.dissipation_cum, b) -
                              interpolate(tr.times, tr.dissipation_cum, a);
          row.gaps.push_back(std::abs(visc - report.limit_dissipation[w]));
        }
        row.done = true;
      } catch (const std::exception& e) {
        row.error = e.what();
        abort.store(true);
      }
      row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  start).count();
    }
  };

  const unsigned n = threads > 0 ? threads : sweep_threads(epsilons.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].done) {
      if (!rows[i].error.empty() && !report.error) {
        report.error = "epsilon = " + std::to_string(epsilons[i]) + ": " + rows[i].error;
      }
      continue;
    }
    report.epsilons.push_back(epsilons[i]);
    report.sup_errors.push_back(rows[i].sup_error);
    report.dissipation_gaps.push_back(rows[i].gaps);
    report.runtimes.push_back(rows[i].runtime);
  }
  if (!report.error) report.fitted_order = fit_order(report.epsilons, report.sup_errors);
  return report;
}

StripDiagnostics strip_diagnostics(const WigglySystem& system,
                                   const Trajectory& tr) {
  const LimitSystem& base = system.base();
  StripDiagnostics d;
  d.times = tr.times;
  d.delta.resize(tr.size());
  d.delta_rate.resize(tr.size());
  const auto& phi = base.stored_energy();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.times[i];
    const double z = tr.z[i];
    const auto [lo, hi] = elastic_strip(base, t);
    // d/dt (Phi')^-1(l(t) - rho) = l'(t) / Phi''(edge)
    auto edge_rate = [&](double edge) {
      const double h = 1e-6 * std::max(1.0, std::abs(edge));
      const double curv = (phi.derivative(edge + h) - phi.derivative(edge - h)) / (2 * h);
      return base.load_rate(t) / curv;
    };
    if (z > hi) {
      d.delta[i] = z - hi;
      d.delta_rate[i] = tr.zdot[i] - edge_rate(hi);
    } else if (z < lo) {
      d.delta[i] = lo - z;
      d.delta_rate[i] = edge_rate(lo) - tr.zdot[i];
    } else {
      d.delta[i] = 0.0;
      d.delta_rate[i] = 0.0;
    }
  }
  const double rate = phi.convexity() / system.viscosity();
  const double scale = std::pow(system.epsilon(), system.beta());
  double c = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double decay = d.delta.front() * std::exp(-rate * d.times[i]);
    c = std::max(c, (d.delta[i] - decay) / scale);
  }
  d.fitted_constant = c;
  return d;
}

}  // namespace wfl
