// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "wfl/app/commands.hpp"
#include "wfl/convergence.hpp"
#include "wfl/error.hpp"
#include "wfl/limit_solver.hpp"
#include "wfl/variational.hpp"

using namespace wfl;
using namespace wfl::app;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances, all pinned here.
constexpr double kClosedFormRel = 1e-14;   // "machine precision" for mu(theta)
constexpr double kOracleAbs = 1e-8;        // g-inversion oracle
constexpr double kFigureRuntime = 10.0;    // seconds
constexpr double kSweepRuntime = 300.0;    // seconds
constexpr double kMinOrder = 0.8;
constexpr double kMaxSupError = 0.01;
constexpr double kGapFraction = 0.10;
constexpr double kReparamTol = 1e-12;
constexpr double kEnergyRel = 1e-6;
constexpr double kKTol = 1e-9;
constexpr double kNapRel = 1e-15;
constexpr double kFenchelFloor = -1e-12;
constexpr double kFenchelEquality = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// mu = w / (1 + a w) amplifies a relative error in a by |a w| / |1 + a w|;
// a itself comes out of trig functions that differ between model and oracle
double mu_condition(double w, double a) { return 1.0 + std::abs(a * w) / std::abs(1.0 + a * w); }

Outcome figure_sweep(const std::string& config_json,
                     const std::function<std::pair<double, double>(double)>& closed,
                     const std::function<double(double)>& slope_factor_of) {
  auto t0 = Clock::now();
  CsvTable t = sweep_theta_table(parse_config(config_json));
  double secs = seconds_since(t0);
  double worst_closed = 0.0, worst_raw = 0.0, worst_oracle = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    double th = t.number(i, "theta");
    auto [mp, mm] = closed(th);
    double a = slope_factor_of(th);
    double ep = rel_err(t.number(i, "mu_plus"), mp), em = rel_err(t.number(i, "mu_minus"), mm);
    worst_raw = std::max({worst_raw, ep, em});
    worst_closed = std::max({worst_closed, ep / mu_condition(0.1, a), em / mu_condition(-0.1, a)});
    worst_oracle = std::max({worst_oracle,
                             std::abs(t.number(i, "mu_plus_oracle") - t.number(i, "mu_plus")),
                             std::abs(t.number(i, "mu_minus_oracle") - t.number(i, "mu_minus"))});
  }
  bool ok = t.rows.size() == 50 && worst_closed <= kClosedFormRel &&
            worst_oracle <= kOracleAbs && secs < kFigureRuntime;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu points, closed-form rel err %.2e (%.2e per unit condition), oracle err "
                "%.2e, %.2f s",
                t.rows.size(), worst_raw, worst_closed, worst_oracle, secs);
  return {ok, buf};
}

LimitSystem canonical_limit() {
  return LimitSystem(1.0, 0.0, LoadingProgram::ramp(0.0, 1.0, 2.0), 0.1, -0.1);
}

SweepSetup canonical_setup() {
  return SweepSetup{canonical_limit(), VerticalSpring{1.0, 2.0, 1.0},
                    SurfaceProfile::sinusoid_with_slope(0.1)};
}

}  // namespace

int main() {
  report(1, "slanted mu(theta) sweep", [] {
    return figure_sweep(R"({"model": {"kind": "slanted", "L_rest": 20, "theta": 0.3}})",
                        [](double th) {
                          return std::pair{0.1 / (1 - 0.1 * std::tan(th)),
                                           -0.1 / (1 + 0.1 * std::tan(th))};
                        },
                        [](double th) { return -std::tan(th); });
  });

  report(2, "angular mu(theta_lim) sweep", [] {
    return figure_sweep(R"({"model": {"kind": "angular", "L": 2, "h": 1}})", [](double tl) {
      double cot = 1.0 / std::tan(tl);
      return std::pair{0.1 / (1 + 0.1 * cot), -0.1 / (1 - 0.1 * cot)};
    }, [](double tl) { return 1.0 / std::tan(tl); });
  });

  report(3, "epsilon convergence of the canonical ramp", [] {
    auto t0 = Clock::now();
    SweepReport r = run_sweep(canonical_setup(), {0.1, 0.05, 0.02, 0.01, 0.005}, {{0.0, 2.0}});
    double secs = seconds_since(t0);
    if (r.error) return Outcome{false, *r.error};
    bool decreasing = true;
    for (std::size_t i = 1; i < r.sup_errors.size(); ++i)
      decreasing = decreasing && r.sup_errors[i] < r.sup_errors[i - 1];
    double order = r.fitted_order.value_or(0.0);
    double sup = r.sup_errors.back();
    double gap = r.dissipation_gaps.back()[0];
    double limit = r.limit_dissipation[0];
    bool ok = decreasing && order >= kMinOrder && sup <= kMaxSupError &&
              gap <= kGapFraction * 0.19 && std::abs(limit - 0.19) <= 1e-12 &&
              secs <= kSweepRuntime;
    return Outcome{ok, std::string(decreasing ? "monotone" : "NOT monotone") +
                           fmt(", order %.3f, sup err %.2e, dissipation gap %.2e, %.2f s", order,
                               sup, gap, secs)};
  });

  report(4, "play operator exactness and rate independence", [] {
    LimitSystem s = canonical_limit();
    auto grid = uniform_grid(2.0, kDefaultGridSize);
    Trajectory tr = solve_limit(s, 0.0, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i)
      worst = std::max(worst, std::abs(tr.z[i] - std::max(0.0, tr.times[i] - 0.1)));
    const double dt = grid[1] - grid[0];

    LimitSystem slow = s.with_loading(s.loading().reparametrized(
        [](double t) { return t * t / 2; }, [](double t) { return t; }, 2.0, 2.0));
    std::vector<double> grid2;
    for (double t : grid) grid2.push_back(std::sqrt(2 * t));
    grid2.back() = 2.0;
    Trajectory tr2 = solve_limit(slow, 0.0, grid2);
    double reparam = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) reparam = std::max(reparam, std::abs(tr.z[i] - tr2.z[i]));
    bool ok = worst <= dt && reparam <= kReparamTol;
    return Outcome{ok, fmt("ramp max err %.2e (dt %.2e), reparametrized max diff %.2e", worst, dt,
                           reparam)};
  });

  report(5, "energy-dissipation certificates", [] {
    LimitSystem s = canonical_limit();
    Trajectory tr = solve_limit(s, 0.0, uniform_grid(2.0, kDefaultGridSize));
    CertificateResult good = de_giorgi_certificate(s, tr);
    Trajectory bumped = tr;
    for (std::size_t i = 0; i < bumped.size(); ++i)
      if (bumped.times[i] >= 1.0) bumped.z[i] += 0.05;
    CertificateResult bad = de_giorgi_certificate(s, bumped);

    double worst = 0.0;
    for (double eps : {0.1, 0.05, 0.02, 0.01, 0.005}) {
      SweepSetup c = canonical_setup();
      WigglySystem w(c.limit, c.model, c.profile, eps);
      Trajectory v = integrate(w, 0.0, uniform_grid(2.0, kDefaultGridSize));
      worst = std::max(worst, energy_balance_residual(w, v) / energy_scale(v));
    }
    bool ok = good.passed && !bad.passed && worst <= kEnergyRel;
    return Outcome{ok, fmt("limit residual %.2e (tol %.2e), perturbed residual %.2e, viscous "
                           "balance %.2e of scale",
                           good.residual, good.tolerance, bad.residual, worst)};
  });

  report(6, "effective dissipation K", [] {
    const double A = 0.1;
    SlopeSampler w = [A](double y) { return A * std::sin(2 * kPi * y); };
    double e0 = std::abs(k_of_xi(0.0, w) - 2 * A / kPi);
    double eout = 0.0;
    for (double xi : {0.1, 0.2, 1.0, -0.1, -0.2, -1.0})
      eout = std::max(eout, std::abs(k_of_xi(xi, w) - std::abs(xi)));
    int strict = 0;
    for (int i = 1; i <= 20; ++i) {
      double xi = -A + 2 * A * i / 21.0;
      if (k_of_xi(xi, w) > std::abs(xi)) ++strict;
    }
    bool ok = e0 <= kKTol && eout <= kKTol && strict == 20;
    return Outcome{ok, fmt("K(0) err %.2e, boundary/exterior err %.2e, %g/20 interior strict", e0,
                           eout, strict)};
  });

  report(7, "directional asymmetry signs", [] {
    auto p = SurfaceProfile::sinusoid_with_slope(0.1);
    const double top = std::atan(10.0) - 0.01;
    int reversed = 0;
    for (int i = 0; i < 50; ++i) {
      double th = 0.01 + (top - 0.01) * i / 49;
      FrictionCoefficients c = coefficients(SlantedSpring{1.0, 20.0, 1.0, th}, p);
      if (c.rho_plus > -c.rho_minus) ++reversed;
    }
    double worst = 0.0;
    bool above_one = true;
    const double tl = kPi / 4;
    auto [mp, mm] = mu_from_omega(0.1, -0.1, 1.0 / std::tan(tl));
    (void)mm;
    for (double frac : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      double with = frac * tl;
      auto [rw, ra] = nap_coefficients(mp, tl, with);
      worst = std::max(worst, rel_err(ra / rw, (tl + with) / (tl - with)));
      above_one = above_one && ra / rw > 1.0;
    }
    bool ok = reversed == 50 && worst <= kNapRel && above_one;
    return Outcome{ok, fmt("rho+ > -rho- at %g/50 angles, nap ratio rel err %.2e", reversed, worst)};
  });

  report(8, "Fenchel residuals", [] {
    std::mt19937_64 rng(20240611);
    const double eps = 0.05, gamma = 1.0;
    DissipationDensity visc = DissipationDensity::viscous_quadratic(eps, gamma);
    SweepSetup c = canonical_setup();
    ElasticInterval omega(-0.1, 0.1);
    DissipationDensity lim =
        DissipationDensity::limit_with_k(limit_slope_sampler(c.model, c.profile), omega);
    std::uniform_real_distribution<double> uv(-10.0, 10.0), uxv(-5.0, 5.0), uxl(-0.15, 0.15);
    double floor_v = 1e300, floor_l = 1e300;
    for (int i = 0; i < 100000; ++i) {
      Extended r = fenchel_residual(visc, uv(rng), uxv(rng));
      floor_v = std::min(floor_v, r.value);
      Extended q = fenchel_residual(lim, uv(rng), uxl(rng));
      if (!q.infinite) floor_l = std::min(floor_l, q.value);
    }
    double eq = 0.0;
    const double vscale = std::pow(eps, gamma);
    for (double v : {-3.0, -0.5, 0.0, 0.7, 2.0})
      eq = std::max(eq, std::abs(fenchel_residual(visc, v, vscale * v).value));
    for (double xi : {-0.1, -0.03, 0.0, 0.08, 0.1})
      eq = std::max(eq, std::abs(fenchel_residual(lim, 0.0, xi).value));
    eq = std::max(eq, std::abs(fenchel_residual(lim, 1.0, 0.1).value));
    eq = std::max(eq, std::abs(fenchel_residual(lim, -1.0, -0.1).value));
    bool ok = floor_v >= kFenchelFloor && floor_l >= kFenchelFloor && eq <= kFenchelEquality;
    return Outcome{ok, fmt("min residual viscous %.2e, limit %.2e; equality cases max %.2e",
                           floor_v, floor_l, eq)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
