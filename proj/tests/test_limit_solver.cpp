#include <doctest.h>

#include <cmath>
#include <random>

#include "wfl/error.hpp"
#include "wfl/limit_solver.hpp"

using namespace wfl;

namespace {

LimitSystem canonical() {
  return LimitSystem(1.0, 0.0, LoadingProgram::ramp(0.0, 1.0, 2.0), 0.1, -0.1);
}

// Piecewise-linear loading through random knots with small corner blends.
LoadingProgram random_loading(std::mt19937_64& rng, double T) {
  std::uniform_real_distribution<double> q(-1.0, 1.0), gap(0.2, 0.6);
  std::vector<std::pair<double, double>> knots{{0.0, 0.0}};
  double t = 0.0;
  while (t < T) {
    t = std::min(T, t + gap(rng));
    knots.emplace_back(t, q(rng));
  }
  return LoadingProgram::smoothed_piecewise_linear(knots, 0.05);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("elastic strip of the canonical system") {
  auto [lo, hi] = elastic_strip(canonical(), 1.0);
  CHECK(lo == doctest::Approx(0.9));
  CHECK(hi == doctest::Approx(1.1));
  LimitSystem sym(2.0, 0.3, LoadingProgram::sinusoid(0.0, 1.0, 3.0, 0.0, 5.0), 0.4, -0.4);
  for (double t : {0.0, 0.7, 2.2, 4.9}) {
    auto [a, b] = elastic_strip(sym, t);
    CHECK(b - a == doctest::Approx(0.4).epsilon(1e-12));
    CHECK((a + b) / 2 == doctest::Approx(sym.load(t) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("constant load keeps the state in place") {
  LimitSystem s(1.0, 0.0, LoadingProgram::ramp(0.5, 0.0, 3.0), 0.1, -0.1);
  Trajectory tr = solve_limit(s, 0.45, uniform_grid(3.0, 300));
  for (double z : tr.z) CHECK(z == 0.45);
  CHECK(tr.dissipation_cum.back() == 0.0);
}

TEST_CASE("ramp loading follows the lower strip edge after t = 0.1") {
  Trajectory tr = solve_limit(canonical(), 0.0, uniform_grid(2.0, 4096));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    double t = tr.times[i];
    CHECK(std::abs(tr.z[i] - std::max(0.0, t - 0.1)) <= 1e-14);
  }
  CHECK(dissipation_limit(canonical(), tr, 0.0, 2.0) == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(dissipation_limit(canonical(), tr, 0.0, 1.0) == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(dissipation_limit(canonical(), tr, 0.0, 0.1) == doctest::Approx(0.0));
}

TEST_CASE("backward ramp dissipates with rho-") {
  LimitSystem s(1.0, 0.0, LoadingProgram::ramp(0.0, -1.0, 2.0), 0.1, -0.2);
  Trajectory tr = solve_limit(s, 0.0, uniform_grid(2.0, 2000));
  CHECK(tr.z.back() == doctest::Approx(-1.8).epsilon(1e-12));
  CHECK(dissipation_limit(s, tr, 0.0, 2.0) == doctest::Approx(0.2 * 1.8).epsilon(1e-12));
}

TEST_CASE("small oscillation sticks after the first contact") {
  // l = 0.08 sin t stays within a strip of half-width 0.1: after the lower
  // edge pushes z from -0.1 to -0.02 nothing moves again
  LimitSystem s(1.0, 0.0, LoadingProgram::sinusoid(0.0, 0.08, 1.0, 0.0, 20.0), 0.1, -0.1);
  Trajectory coarse = solve_limit(s, -0.1, uniform_grid(20.0, 2000));
  const double settled = interpolate(coarse.times, coarse.z, 1.6);
  // the grid misses the crest of the load by O(dt^2)
  CHECK(std::abs(settled + 0.02) <= 1e-5);
  for (std::size_t i = 0; i < coarse.size(); ++i)
    if (coarse.times[i] > 1.6) CHECK(coarse.z[i] == settled);
  Trajectory fine = solve_limit(s, -0.1, uniform_grid(20.0, 32000));
  CHECK(std::abs(fine.z.back() - coarse.z.back()) <= s.load_lipschitz() * 20.0 / 2000);
}

TEST_CASE("initial state outside the strip is rejected") {
  try {
    solve_limit(canonical(), 0.2, uniform_grid(2.0, 10));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInitialState);
  }
}

TEST_CASE("play operator stays in the strip for random loadings") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    LimitSystem s(1.5, 0.1, random_loading(rng, 4.0), 0.2, -0.3);
    auto [lo, hi] = elastic_strip(s, 0.0);
    Trajectory tr = solve_limit(s, 0.5 * (lo + hi), uniform_grid(4.0, 3000));
    for (std::size_t i = 0; i < tr.size(); ++i) {
      CHECK(tr.z[i] >= tr.z_tilde_minus[i]);
      CHECK(tr.z[i] <= tr.z_tilde_plus[i]);
      if (i > 0) {
        double dz = tr.z[i] - tr.z[i - 1];
        // moves only when pushed by the edge it ends on
        if (dz > 0) CHECK(tr.z[i] == tr.z_tilde_minus[i]);
        if (dz < 0) CHECK(tr.z[i] == tr.z_tilde_plus[i]);
      }
    }
  }
}

TEST_CASE("window additivity") {
  std::mt19937_64 rng(23);
  LimitSystem s(1.0, 0.0, random_loading(rng, 3.0), 0.1, -0.15);
  Trajectory tr = solve_limit(s, 0.0, uniform_grid(3.0, 1500));
  for (auto [a, b, c] : {std::tuple{0.0, 1.0, 3.0}, {0.3, 1.7777, 2.9}, {0.0, 0.001, 3.0}}) {
    double whole = dissipation_limit(s, tr, a, c);
    double parts = dissipation_limit(s, tr, a, b) + dissipation_limit(s, tr, b, c);
    CHECK(std::abs(whole - parts) <= 1e-14 * std::max(1.0, whole));
  }
}

TEST_CASE("rate independence under a time change") {
  std::mt19937_64 rng(29);
  LoadingProgram q = random_loading(rng, 2.0);
  LimitSystem s(1.0, 0.0, q, 0.1, -0.1);
  // s(tau) = tau^2 / 2 maps [0, 2] onto [0, 2]
  LoadingProgram slow = q.reparametrized([](double tau) { return tau * tau / 2.0; },
                                         [](double tau) { return tau; }, 2.0, 2.0);
  LimitSystem s2 = s.with_loading(slow);
  std::vector<double> grid = uniform_grid(2.0, 2048);
  std::vector<double> grid2;
  for (double t : grid) grid2.push_back(std::sqrt(2.0 * t));
  grid2.front() = 0.0;
  grid2.back() = 2.0;
  Trajectory a = solve_limit(s, 0.0, grid);
  Trajectory b = solve_limit(s2, 0.0, grid2);
  CHECK(max_abs_diff(a.z, b.z) <= 1e-12);
  CHECK(std::abs(dissipation_limit(s, a, 0.0, 2.0) - dissipation_limit(s2, b, 0.0, 2.0)) <=
        1e-12);
  CHECK(std::abs(dissipation_limit(s, a, grid[512], grid[1536]) -
                 dissipation_limit(s2, b, grid2[512], grid2[1536])) <= 1e-12);
}

TEST_CASE("grid refinement changes the final state by at most Lambda dt / k_h") {
  LimitSystem s(2.0, 0.0, LoadingProgram::sinusoid(0.0, 1.0, 2.0, 0.3, 6.0), 0.2, -0.2);
  const double lip = s.load_lipschitz();
  auto [lo, hi] = elastic_strip(s, 0.0);
  const double z0 = 0.5 * (lo + hi);
  for (std::size_t n : {100u, 400u, 1600u}) {
    Trajectory coarse = solve_limit(s, z0, uniform_grid(6.0, n));
    Trajectory fine = solve_limit(s, z0, uniform_grid(6.0, 2 * n));
    CHECK(std::abs(coarse.z.back() - fine.z.back()) <= lip * (6.0 / n) / s.k_h());
  }
}

TEST_CASE("monotone loading gives a monotone solution") {
  LoadingProgram q = LoadingProgram::smoothed_piecewise_linear(
      {{0.0, 0.0}, {1.0, 0.5}, {2.0, 0.6}, {3.0, 2.0}}, 0.1);
  LimitSystem s(1.0, 0.0, q, 0.1, -0.1);
  Trajectory tr = solve_limit(s, 0.05, uniform_grid(3.0, 3000));
  for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.z[i] >= tr.z[i - 1]);
}

TEST_CASE("smoothed piecewise loading is C1 with an honest Lipschitz bound") {
  LoadingProgram q = LoadingProgram::smoothed_piecewise_linear(
      {{0.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}, {2.5, 0.0}}, 0.1);
  CHECK(q.horizon() == 2.5);
  for (double corner : {1.0, 2.0}) {
    for (double edge : {corner - 0.1, corner + 0.1}) {
      double h = 1e-9;
      CHECK(std::abs(q.q(edge + h) - q.q(edge - h)) <= 1e-8);
      CHECK(std::abs(q.dq(edge + h) - q.dq(edge - h)) <= 1e-6);
    }
  }
  for (int i = 0; i <= 2500; ++i) {
    double t = 2.5 * i / 2500;
    CHECK(std::abs(q.dq(t)) <= q.lipschitz() + 1e-12);
    double h = 1e-6;
    double fd = (q.q(std::min(2.5, t + h)) - q.q(std::max(0.0, t - h))) /
                (std::min(2.5, t + h) - std::max(0.0, t - h));
    CHECK(std::abs(fd - q.dq(t)) <= 1e-4);
  }
  CHECK_THROWS_AS(LoadingProgram::smoothed_piecewise_linear({{0.5, 0.0}, {1.0, 1.0}}, 0.0),
                  Error);
}

TEST_CASE("custom stored energy reproduces the quadratic case") {
  StoredEnergy phi = StoredEnergy::custom([](double z) { return z * z; },
                                          [](double z) { return 2 * z; },
                                          [](double f) { return f / 2; }, 2.0);
  LoadingProgram q = LoadingProgram::sinusoid(0.0, 1.0, 1.0, 0.0, 5.0);
  LimitSystem a(2.0, 0.0, q, 0.1, -0.2);
  LimitSystem b(2.0, 0.0, q, 0.1, -0.2, phi);
  Trajectory ta = solve_limit(a, 0.0, uniform_grid(5.0, 500));
  Trajectory tb = solve_limit(b, 0.0, uniform_grid(5.0, 500));
  CHECK(max_abs_diff(ta.z, tb.z) <= 1e-15);
}

TEST_CASE("non-quadratic stored energy") {
  // Phi = z^2/2 + z^4/4 has Phi' = z + z^3, inverted by Cardano
  auto inv = [](double f) {
    double d = std::sqrt(f * f / 4 + 1.0 / 27);
    return std::cbrt(f / 2 + d) + std::cbrt(f / 2 - d);
  };
  StoredEnergy phi = StoredEnergy::custom([](double z) { return z * z / 2 + z * z * z * z / 4; },
                                          [](double z) { return z + z * z * z; }, inv, 1.0);
  LimitSystem s(1.0, 0.0, LoadingProgram::ramp(0.0, 1.0, 2.0), 0.1, -0.1, phi);
  Trajectory tr = solve_limit(s, 0.0, uniform_grid(2.0, 1000));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    double z = tr.z[i];
    double t = tr.times[i];
    if (t > 0.1) CHECK(z + z * z * z == doctest::Approx(t - 0.1).epsilon(1e-12));
  }
}
