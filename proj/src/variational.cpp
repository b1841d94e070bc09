#include "wfl/variational.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "wfl/error.hpp"

namespace wfl {

ElasticInterval::ElasticInterval(double lo, double hi) : lower(lo), upper(hi) {
  if (!(lower < 0.0 && 0.0 < upper)) {
    throw Error(ErrorKind::Domain, "elastic interval needs rho- < 0 < rho+");
  }
}

Extended legendre_conjugate_limit(double xi, const ElasticInterval& interval) {
  return interval.contains(xi) ? Extended::finite(0.0) : Extended::infinity();
}

SlopeSampler limit_slope_sampler(const BristleModel& model,
                                 const SurfaceProfile& profile) {
  const double alpha = energetic_factor(model);
  auto perceived =
      std::make_shared<const PerceivedProfile>(profile, slope_factor(model));
  return [alpha, perceived](double y) { return alpha * perceived->slope(y); };
}

namespace {

double piece_integral(const SlopeSampler& wprime, double xi, double a, double b) {
  if (!(b > a)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  const double v = gauss_kronrod<double, 31>::integrate(
      [&](double y) { return xi - wprime(y); }, a, b, 8, 1e-12);
  return std::abs(v);
}

}  // namespace

double k_of_xi(double xi, const SlopeSampler& wprime, int scan_points) {
  const int n = std::max(16, scan_points);
  std::vector<double> ys(n + 1), g(n + 1);
  for (int i = 0; i <= n; ++i) {
    ys[i] = static_cast<double>(i) / n;
    g[i] = xi - wprime(ys[i]);
  }
  // breakpoints at the sign changes of xi - W'
  std::vector<double> cuts{0.0};
  for (int i = 0; i < n; ++i) {
    if (g[i] == 0.0) {
      if (i > 0) cuts.push_back(ys[i]);
      continue;
    }
    if (g[i + 1] != 0.0 && (g[i] > 0.0) != (g[i + 1] > 0.0)) {
      boost::uintmax_t iters = 100;
      auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15; };
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          [&](double y) { return xi - wprime(y); }, ys[i], ys[i + 1], g[i],
          g[i + 1], tol, iters);
      cuts.push_back(0.5 * (lo + hi));
    }
  }
  cuts.push_back(1.0);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    total += piece_integral(wprime, xi, cuts[j], cuts[j + 1]);
  }
  return total;
}

KTable::KTable(const SlopeSampler& wprime, double xi_min, double xi_max,
               std::size_t n) {
  if (n < 2 || !(xi_max > xi_min)) {
    throw Error(ErrorKind::Domain, "K table needs n >= 2 and xi_max > xi_min");
  }
  xi_.resize(n);
  k_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi_[i] = xi_min + (xi_max - xi_min) * static_cast<double>(i) /
                          static_cast<double>(n - 1);
    k_[i] = k_of_xi(xi_[i], wprime);
  }
}

double KTable::operator()(double xi) const {
  if (xi < xi_.front() || xi > xi_.back()) {
    throw Error(ErrorKind::Domain, "xi outside the tabulated range");
  }
  return interpolate(xi_, k_, xi);
}

DissipationDensity DissipationDensity::viscous_quadratic(double epsilon,
                                                         double gamma) {
  if (!(epsilon > 0.0) || !(gamma > 0.0)) {
    throw Error(ErrorKind::Domain, "viscous density needs eps > 0 and gamma > 0");
  }
  DissipationDensity d;
  d.kind_ = Kind::ViscousQuadratic;
  d.viscosity_ = std::pow(epsilon, gamma);
  return d;
}

DissipationDensity DissipationDensity::limit_with_k(SlopeSampler wprime,
                                                    ElasticInterval interval) {
  DissipationDensity d;
  d.kind_ = Kind::LimitWithK;
  d.wprime_ = std::move(wprime);
  d.interval_ = interval;
  return d;
}

Extended DissipationDensity::operator()(double v, double xi) const {
  if (kind_ == Kind::ViscousQuadratic) {
    return Extended::finite(0.5 * viscosity_ * v * v + xi * xi / (2.0 * viscosity_));
  }
  if (!interval_.contains(xi)) return Extended::infinity();
  if (v == 0.0) return Extended::finite(0.0);
  return Extended::finite(std::abs(v) * k_of_xi(xi, wprime_));
}

Extended fenchel_residual(const DissipationDensity& density, double v, double xi) {
  const Extended m = density(v, xi);
  if (m.infinite) return m;
  return Extended::finite(m.value - v * xi);
}

bool contact_set_member(double v, double xi, const ElasticInterval& interval,
                        double tau_xi, double tau_v) {
  if (tau_xi < 0.0) tau_xi = 1e-8 * interval.upper;
  if (std::abs(v) <= tau_v) {
    return xi >= interval.lower - tau_xi && xi <= interval.upper + tau_xi;
  }
  if (v > 0.0) return std::abs(xi - interval.upper) <= tau_xi;
  return std::abs(xi - interval.lower) <= tau_xi;
}

double certification_tolerance(const LimitSystem& system, const Trajectory& tr) {
  double zmax = 0.0, dt = 0.0;
  for (double z : tr.z) zmax = std::max(zmax, std::abs(z));
  for (std::size_t i = 1; i < tr.size(); ++i) {
    dt = std::max(dt, tr.times[i] - tr.times[i - 1]);
  }
  return 10.0 * system.load_lipschitz() * zmax * dt;
}

namespace {

template <class StepDissipation>
CertificateResult certify(const LimitSystem& system, const Trajectory& tr,
                          StepDissipation&& step_dissipation) {
  CertificateResult res;
  res.tolerance = certification_tolerance(system, tr);
  const double tau = 1e-8 * std::max(system.rho_plus(), -system.rho_minus());
  const std::size_t n = tr.size();
  if (n < 2) throw Error(ErrorKind::Domain, "trajectory too short to certify");

  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi[i] = system.driving_force(tr.times[i], tr.z[i]);
    if (xi[i] < system.rho_minus() - tau || xi[i] > system.rho_plus() + tau) {
      res.indicator_fired = true;
      res.offending_time = tr.times[i];
      res.residual = std::numeric_limits<double>::infinity();
      res.passed = false;
      return res;
    }
  }

  double dissipation = 0.0;
  double work = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double t0 = tr.times[i], t1 = tr.times[i + 1];
    const double dt = t1 - t0;
    const double z0 = tr.z[i], z1 = tr.z[i + 1];
    dissipation += step_dissipation(z1 - z0, xi[i], xi[i + 1]);
    // Simpson on -l'(t) z(t), z linear inside the step
    const double tm = 0.5 * (t0 + t1);
    work -= dt / 6.0 *
            (system.load_rate(t0) * z0 + 4.0 * system.load_rate(tm) * 0.5 * (z0 + z1) +
             system.load_rate(t1) * z1);
  }
  const double e0 = system.energy(tr.times.front(), tr.z.front());
  const double e1 = system.energy(tr.times.back(), tr.z.back());
  res.residual = e1 + dissipation - e0 - work;
  res.passed = std::abs(res.residual) <= res.tolerance;
  return res;
}

}  // namespace

CertificateResult de_giorgi_certificate(const LimitSystem& system,
                                        const Trajectory& tr) {
  return certify(system, tr, [&](double dz, double, double) {
    return system.dissipation_rate(dz);
  });
}

CertificateResult de_giorgi_certificate(const LimitSystem& system,
                                        const Trajectory& tr,
                                        const SlopeSampler& wprime) {
  return certify(system, tr, [&](double dz, double xa, double xb) {
    if (dz == 0.0) return 0.0;
    return std::abs(dz) * 0.5 * (k_of_xi(xa, wprime) + k_of_xi(xb, wprime));
  });
}

double legendre_transform_on_grid(const std::function<double(double)>& f,
                                  std::span<const double> xs, double xi) {
  double best = -std::numeric_limits<double>::infinity();
  for (double x : xs) best = std::max(best, xi * x - f(x));
  return best;
}

}  // namespace wfl
