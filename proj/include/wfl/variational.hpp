#ifndef WFL_VARIATIONAL_HPP
#define WFL_VARIATIONAL_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "wfl/limit_solver.hpp"
#include "wfl/models.hpp"
#include "wfl/trajectory.hpp"

namespace wfl {

/// The elastic domain Omega_0 = [rho-, rho+].
struct ElasticInterval {
  double lower = 0.0;
  double upper = 0.0;

  ElasticInterval() = default;
  ElasticInterval(double lower, double upper);
  bool contains(double xi) const { return xi >= lower && xi <= upper; }
};

/// Value in R u {+inf}. The infinite case is a flag, never a large number.
struct Extended {
  bool infinite = false;
  double value = 0.0;

  static Extended finite(double v) { return {false, v}; }
  static Extended infinity() {
    return {true, std::numeric_limits<double>::infinity()};
  }
};

/// R*(xi): the indicator of Omega_0.
Extended legendre_conjugate_limit(double xi, const ElasticInterval& interval);

/// A 1-periodic zero-mean slope profile W'(y) on [0, 1].
using SlopeSampler = std::function<double(double)>;

/// W' = alpha * (perceived slope) for a bristle model on a profile; its range
/// is exactly [rho-, rho+].
SlopeSampler limit_slope_sampler(const BristleModel& model,
                                 const SurfaceProfile& profile);

/// K(xi) = int_0^1 |xi - W'(y)| dy. The integrand is split at the sign
/// changes of xi - W', each located by bracketed root finding, and every
/// smooth piece goes through adaptive Gauss-Kronrod.
double k_of_xi(double xi, const SlopeSampler& wprime, int scan_points = 512);

/// Eagerly tabulated K over a xi grid; read-only after construction.
class KTable {
 public:
  KTable(const SlopeSampler& wprime, double xi_min, double xi_max,
         std::size_t n);

  const std::vector<double>& xi() const { return xi_; }
  const std::vector<double>& k() const { return k_; }
  /// Linear interpolation inside the tabulated range.
  double operator()(double xi) const;

 private:
  std::vector<double> xi_;
  std::vector<double> k_;
};

/// M(v, xi) with M >= v xi.
class DissipationDensity {
 public:
  /// eps^gamma v^2 / 2 + xi^2 / (2 eps^gamma).
  static DissipationDensity viscous_quadratic(double epsilon, double gamma);
  /// |v| K(xi) + chi_{Omega_0}(xi).
  static DissipationDensity limit_with_k(SlopeSampler wprime,
                                         ElasticInterval interval);

  Extended operator()(double v, double xi) const;

 private:
  enum class Kind { ViscousQuadratic, LimitWithK };
  Kind kind_ = Kind::ViscousQuadratic;
  double viscosity_ = 1.0;
  SlopeSampler wprime_;
  ElasticInterval interval_;
};

/// M(v, xi) - v xi (>= 0; +inf when the indicator fires).
Extended fenchel_residual(const DissipationDensity& density, double v, double xi);

/// Membership in the contact set {0} x Omega_0 u (-inf,0) x {rho-} u
/// (0,inf) x {rho+}. Default tau_xi is 1e-8 rho+.
bool contact_set_member(double v, double xi, const ElasticInterval& interval,
                        double tau_xi = -1.0, double tau_v = 1e-12);

struct CertificateResult {
  /// E(T) + D - E(0) - int d_t E; finite unless the indicator fired.
  double residual = 0.0;
  bool indicator_fired = false;
  double offending_time = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// 10 Lambda_l max|z| dt_max: quadrature error budget of an exact solution.
double certification_tolerance(const LimitSystem& system,
                               const Trajectory& trajectory);

/// Energy-dissipation certificate with M = R(v) + R*(xi).
CertificateResult de_giorgi_certificate(const LimitSystem& system,
                                        const Trajectory& trajectory);

/// Same with M = |v| K(xi) + chi(xi).
CertificateResult de_giorgi_certificate(const LimitSystem& system,
                                        const Trajectory& trajectory,
                                        const SlopeSampler& wprime);

/// sup over the grid of xi x - f(x).
double legendre_transform_on_grid(const std::function<double(double)>& f,
                                  std::span<const double> xs, double xi);

}  // namespace wfl

#endif
