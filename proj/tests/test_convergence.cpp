#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "wfl/convergence.hpp"
#include "wfl/error.hpp"

using namespace wfl;

namespace {

SweepSetup canonical() {
  LimitSystem lim(1.0, 0.0, LoadingProgram::ramp(0.0, 1.0, 2.0), 0.1, -0.1);
  return SweepSetup{lim, VerticalSpring{1, 2, 1}, SurfaceProfile::sinusoid_with_slope(0.1)};
}

}  // namespace

TEST_CASE("fit_order recovers an exact power law") {
  std::vector<double> eps{0.1, 0.05, 0.02, 0.01};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * std::pow(e, 1.5));
  REQUIRE(fit_order(eps, err).has_value());
  CHECK(*fit_order(eps, err) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK_FALSE(fit_order({0.1}, {0.01}).has_value());
}

TEST_CASE("sweep error decreases from 0.1 to 0.05") {
  SweepReport r = run_sweep(canonical(), {0.1, 0.05}, {{0.0, 2.0}});
  REQUIRE_FALSE(r.error.has_value());
  REQUIRE(r.sup_errors.size() == 2);
  CHECK(r.sup_errors[1] < r.sup_errors[0]);
  CHECK(r.limit_dissipation[0] == doctest::Approx(0.19).epsilon(1e-10));
  CHECK(r.fitted_order.has_value());
}

TEST_CASE("single epsilon gives no fitted order") {
  SweepReport r = run_sweep(canonical(), {0.05}, {{0.0, 2.0}});
  CHECK(r.sup_errors.size() == 1);
  CHECK_FALSE(r.fitted_order.has_value());
}

TEST_CASE("dissipation gaps are additive over adjacent windows") {
  SweepReport r = run_sweep(canonical(), {0.05}, {{0.0, 2.0}, {0.0, 0.75}, {0.75, 2.0}});
  CHECK(r.limit_dissipation[0] ==
        doctest::Approx(r.limit_dissipation[1] + r.limit_dissipation[2]).epsilon(1e-13));
}

TEST_CASE("invalid sweeps fail before any integration") {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Domain;
  };
  CHECK(kind([] { run_sweep(canonical(), {0.05, 0.1}, {{0.0, 2.0}}); }) == ErrorKind::Config);
  CHECK(kind([] { run_sweep(canonical(), {}, {{0.0, 2.0}}); }) == ErrorKind::Config);
  CHECK(kind([] { run_sweep(canonical(), {0.1}, {{0.0, 3.0}}); }) == ErrorKind::Config);
  // 40 * 0.1/(2 pi) exceeds half the spring height
  CHECK(kind([] { run_sweep(canonical(), {40.0, 0.1}, {{0.0, 2.0}}); }) == ErrorKind::Validity);
}

TEST_CASE("sweeps are bitwise reproducible across thread counts") {
  const std::vector<double> eps{0.1, 0.05, 0.02};
  const std::vector<std::pair<double, double>> win{{0.0, 2.0}, {0.5, 1.5}};
  SweepReport a = run_sweep(canonical(), eps, win, 1);
  SweepReport b = run_sweep(canonical(), eps, win, 3);
  SweepReport c = run_sweep(canonical(), eps, win, 1);
  CHECK(a.sup_errors == b.sup_errors);
  CHECK(a.dissipation_gaps == b.dissipation_gaps);
  CHECK(a.fitted_order == b.fitted_order);
  CHECK(a.sup_errors == c.sup_errors);
}

TEST_CASE("thread count honours WFL_THREADS") {
  setenv("WFL_THREADS", "2", 1);
  CHECK(sweep_threads(10) == 2u);
  CHECK(sweep_threads(1) == 1u);
  unsetenv("WFL_THREADS");
  CHECK(sweep_threads(4) >= 1u);
}

TEST_CASE("strip diagnostics of a run starting inside the strip") {
  SweepSetup s = canonical();
  WigglySystem sys(s.limit, s.model, s.profile, 0.05);
  Trajectory tr = integrate(sys, 0.0, uniform_grid(2.0, 1024));
  StripDiagnostics d = strip_diagnostics(sys, tr);
  CHECK(d.delta.front() == 0.0);
  for (double v : d.delta) CHECK(v >= 0.0);
  CHECK(d.fitted_constant >= 0.0);
  CHECK(d.fitted_constant < 10.0);
}
