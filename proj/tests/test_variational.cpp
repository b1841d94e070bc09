#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wfl/error.hpp"
#include "wfl/limit_solver.hpp"
#include "wfl/variational.hpp"

using namespace wfl;

namespace {

constexpr double kPi = std::numbers::pi;

// K for W' = A sin(2 pi y): with s = xi / A,
// K = (2A/pi) (sqrt(1 - s^2) + s asin s) for |s| <= 1 and |xi| otherwise.
double k_sine(double xi, double A) {
  double s = xi / A;
  if (std::abs(s) >= 1.0) return std::abs(xi);
  return 2.0 * A / kPi * (std::sqrt(1.0 - s * s) + s * std::asin(s));
}

SlopeSampler sine(double A) {
  return [A](double y) { return A * std::sin(2.0 * kPi * y); };
}

// Midpoint rule with many cells; slow but independent of the adaptive path.
double k_brute(double xi, const SlopeSampler& w, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::abs(xi - w((i + 0.5) / n));
  return sum / n;
}

LimitSystem canonical() {
  return LimitSystem(1.0, 0.0, LoadingProgram::ramp(0.0, 1.0, 2.0), 0.1, -0.1);
}

}  // namespace

TEST_CASE("conjugate of the limit dissipation is an indicator") {
  ElasticInterval omega(-0.1, 0.1);
  CHECK(legendre_conjugate_limit(0.05, omega).value == 0.0);
  CHECK_FALSE(legendre_conjugate_limit(0.1, omega).infinite);
  CHECK_FALSE(legendre_conjugate_limit(-0.1, omega).infinite);
  CHECK(legendre_conjugate_limit(0.2, omega).infinite);
  CHECK(legendre_conjugate_limit(-0.2, omega).infinite);
  CHECK_THROWS_AS(ElasticInterval(0.1, 0.2), Error);
}

TEST_CASE("K of a sine slope against the closed form") {
  const double A = 0.1;
  CHECK(k_of_xi(0.0, sine(A)) == doctest::Approx(2 * A / kPi).epsilon(1e-12));
  for (double xi : {0.1, 0.2, 1.0, -0.1, -0.35})
    CHECK(k_of_xi(xi, sine(A)) == doctest::Approx(std::abs(xi)).epsilon(1e-12));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.0999, 0.0999);
  for (int i = 0; i < 200; ++i) {
    double xi = u(rng);
    CHECK(std::abs(k_of_xi(xi, sine(A)) - k_sine(xi, A)) <= 1e-10);
    // strictly above |xi| inside the slope range
    CHECK(k_of_xi(xi, sine(A)) > std::abs(xi));
  }
}

TEST_CASE("K of a model-derived slope against brute-force quadrature") {
  auto p = SurfaceProfile::fourier({{0.1 / (2 * kPi), 1, 0.3}, {0.01, 3, 1.0}});
  SlopeSampler w = limit_slope_sampler(AngularSpring{1.0, 1.5, 1.0, 0.1}, p);
  FrictionCoefficients c = coefficients(AngularSpring{1.0, 1.5, 1.0, 0.1}, p);
  for (double xi : {c.rho_minus, 0.5 * c.rho_minus, 0.0, 0.3 * c.rho_plus, c.rho_plus}) {
    CHECK(std::abs(k_of_xi(xi, w) - k_brute(xi, w, 200000)) <= 1e-6);
  }
  // sampler range is exactly the elastic interval
  double hi = -1e300, lo = 1e300;
  for (int i = 0; i < 20000; ++i) {
    double v = w(i / 20000.0);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  CHECK(hi == doctest::Approx(c.rho_plus).epsilon(1e-6));
  CHECK(lo == doctest::Approx(c.rho_minus).epsilon(1e-6));
}

TEST_CASE("K is convex and 1-Lipschitz") {
  SlopeSampler w = sine(0.1);
  KTable table(w, -0.3, 0.3, 121);
  const auto& k = table.k();
  for (std::size_t i = 1; i + 1 < k.size(); ++i) {
    CHECK(k[i - 1] + k[i + 1] - 2 * k[i] >= -1e-12);
    CHECK(std::abs(k[i + 1] - k[i]) <= (table.xi()[i + 1] - table.xi()[i]) * (1 + 1e-9));
  }
  CHECK(table(0.0) == doctest::Approx(0.2 / kPi).epsilon(1e-12));
  CHECK_THROWS_AS(table(0.5), Error);
}

TEST_CASE("Fenchel residuals") {
  DissipationDensity visc = DissipationDensity::viscous_quadratic(0.1, 1.0);
  for (auto [v, xi] : {std::pair{1.3, 0.13}, {-2.0, -0.2}, {0.0, 0.0}}) {
    Extended r = fenchel_residual(visc, v, xi);
    CHECK(std::abs(r.value) <= 1e-15);
  }
  Extended off = fenchel_residual(visc, 1.0, 0.3);
  CHECK(off.value == doctest::Approx(0.5 * std::pow(std::sqrt(0.1) - 0.3 / std::sqrt(0.1), 2)));

  ElasticInterval omega(-0.1, 0.1);
  DissipationDensity lim = DissipationDensity::limit_with_k(sine(0.1), omega);
  CHECK(fenchel_residual(lim, 0.0, 0.05).value == 0.0);
  CHECK(std::abs(fenchel_residual(lim, 1.0, 0.1).value) <= 1e-12);
  CHECK(std::abs(fenchel_residual(lim, -2.0, -0.1).value) <= 1e-12);
  CHECK(fenchel_residual(lim, 1.0, 0.05).value > 0.0);
  CHECK(fenchel_residual(lim, 1.0, 0.2).infinite);

  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uv(-5.0, 5.0), ux(-0.1, 0.1);
  for (int i = 0; i < 100000; ++i) {
    double v = uv(rng), xi = ux(rng);
    CHECK(fenchel_residual(lim, v, xi).value >= -1e-12);
    CHECK(fenchel_residual(visc, v, xi).value >= -1e-15);
  }
}

TEST_CASE("contact set") {
  ElasticInterval omega(-0.1, 0.1);
  CHECK(contact_set_member(0.0, 0.05, omega));
  CHECK(contact_set_member(1.0, 0.1, omega));
  CHECK_FALSE(contact_set_member(1.0, 0.05, omega));
  CHECK(contact_set_member(-1.0, -0.1, omega));
  CHECK_FALSE(contact_set_member(-1.0, 0.1, omega));
  CHECK_FALSE(contact_set_member(0.0, 0.2, omega));
  CHECK(contact_set_member(1.0, 0.1 + 5e-10, omega));
}

TEST_CASE("certificate accepts limit solutions") {
  LimitSystem s = canonical();
  Trajectory tr = solve_limit(s, 0.0, uniform_grid(2.0, 4096));
  CertificateResult r = de_giorgi_certificate(s, tr);
  CHECK(r.passed);
  CHECK_FALSE(r.indicator_fired);
  // only the Simpson rule across the kink at t = 0.1 contributes
  CHECK(std::abs(r.residual) <= 1e-6);
  CertificateResult rk = de_giorgi_certificate(s, tr, sine(0.1));
  CHECK(rk.passed);

  LimitSystem stuck(1.0, 0.0, LoadingProgram::ramp(0.0, 0.0, 1.0), 0.1, -0.1);
  Trajectory st = solve_limit(stuck, 0.05, uniform_grid(1.0, 100));
  CHECK(de_giorgi_certificate(stuck, st).residual == 0.0);

  LimitSystem osc(1.0, 0.0, LoadingProgram::sinusoid(0.0, 0.5, 2.0, 0.0, 6.0), 0.1, -0.15);
  Trajectory ot = solve_limit(osc, 0.0, uniform_grid(6.0, 8192));
  CHECK(de_giorgi_certificate(osc, ot).passed);
}

TEST_CASE("certificate rejects perturbed trajectories") {
  LimitSystem s = canonical();
  Trajectory tr = solve_limit(s, 0.0, uniform_grid(2.0, 4096));
  Trajectory bumped = tr;
  for (std::size_t i = 0; i < bumped.size(); ++i)
    if (bumped.times[i] >= 1.0) bumped.z[i] += 0.05;
  CertificateResult r = de_giorgi_certificate(s, bumped);
  CHECK_FALSE(r.indicator_fired);
  CHECK_FALSE(r.passed);
  CHECK(r.residual > r.tolerance);

  Trajectory lagging = tr;
  for (std::size_t i = 0; i < lagging.size(); ++i)
    if (lagging.times[i] >= 1.0) lagging.z[i] -= 0.05;
  CertificateResult lag = de_giorgi_certificate(s, lagging);
  CHECK(lag.indicator_fired);
  CHECK(lag.offending_time == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_FALSE(lag.passed);
}

TEST_CASE("Legendre transform on a grid is an involution for the quadratic") {
  const double visc = 0.05;
  std::vector<double> xs, xis;
  for (int i = -4000; i <= 4000; ++i) xs.push_back(i * 1e-3);
  for (int i = -400; i <= 400; ++i) xis.push_back(i * 5e-4);
  auto psi = [&](double x) { return visc * x * x / 2; };
  for (double xi : {-0.1, 0.0, 0.03, 0.15}) {
    double conj = legendre_transform_on_grid(psi, xs, xi);
    CHECK(conj == doctest::Approx(xi * xi / (2 * visc)).epsilon(1e-4));
  }
  auto conj = [&](double xi) { return xi * xi / (2 * visc); };
  for (double v : {-2.0, 0.0, 1.0, 3.0}) {
    double back = legendre_transform_on_grid(conj, xis, v);
    CHECK(std::abs(back - psi(v)) <= 1e-6);
  }
}
