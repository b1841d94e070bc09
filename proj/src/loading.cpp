#include "wfl/loading.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfl/error.hpp"

namespace wfl {

LoadingProgram::LoadingProgram(LoadingKind kind, std::function<double(double)> q,
                               std::function<double(double)> dq, double horizon,
                               double lipschitz)
    : kind_(kind),
      q_(std::move(q)),
      dq_(std::move(dq)),
      horizon_(horizon),
      lipschitz_(lipschitz) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw Error(ErrorKind::Config, "loading horizon must be positive");
  }
}

LoadingProgram LoadingProgram::ramp(double q0, double rate, double horizon) {
  return LoadingProgram(
      LoadingKind::Ramp, [=](double t) { return q0 + rate * t; },
      [=](double) { return rate; }, horizon, std::abs(rate));
}

LoadingProgram LoadingProgram::sinusoid(double mean, double amplitude,
                                        double omega, double phase,
                                        double horizon) {
  return LoadingProgram(
      LoadingKind::Sinusoid,
      [=](double t) { return mean + amplitude * std::sin(omega * t + phase); },
      [=](double t) { return amplitude * omega * std::cos(omega * t + phase); },
      horizon, std::abs(amplitude * omega));
}

LoadingProgram LoadingProgram::smoothed_piecewise_linear(
    std::vector<std::pair<double, double>> knots, double blend) {
  if (knots.size() < 2) {
    throw Error(ErrorKind::Config, "piecewise loading needs at least two knots");
  }
  if (knots.front().first != 0.0) {
    throw Error(ErrorKind::Config, "piecewise loading must start at t = 0");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw Error(ErrorKind::Config, "piecewise knots must have increasing times");
    }
  }
  if (!(blend >= 0.0)) {
    throw Error(ErrorKind::Config, "blend half-width must be non-negative");
  }
  const std::size_t n = knots.size();
  std::vector<double> slope(n - 1);
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slope[i] = (knots[i + 1].second - knots[i].second) /
               (knots[i + 1].first - knots[i].first);
    lip = std::max(lip, std::abs(slope[i]));
  }
  // blend half-width per interior knot, capped so blends never overlap
  std::vector<double> width(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double left = knots[i].first - knots[i - 1].first;
    const double right = knots[i + 1].first - knots[i].first;
    width[i] = std::min({blend, 0.5 * left, 0.5 * right});
  }

  struct Eval {
    double q, dq;
  };
  auto eval = [=](double t) -> Eval {
    // locate the segment
    std::size_t seg = 0;
    while (seg + 2 < n && t >= knots[seg + 1].first) ++seg;
    // inside the blend of a neighbouring interior knot?
    for (std::size_t i = std::max<std::size_t>(seg, 1);
         i <= std::min(seg + 1, n - 2); ++i) {
      const double d = width[i];
      if (d > 0.0 && std::abs(t - knots[i].first) < d) {
        const double t0 = knots[i].first - d;
        const double q0 = knots[i].second - slope[i - 1] * d;
        const double q1 = knots[i].second + slope[i] * d;
        const double m0 = slope[i - 1] * 2.0 * d;
        const double m1 = slope[i] * 2.0 * d;
        const double s = (t - t0) / (2.0 * d);
        const double s2 = s * s, s3 = s2 * s;
        const double q = (2 * s3 - 3 * s2 + 1) * q0 + (s3 - 2 * s2 + s) * m0 +
                         (-2 * s3 + 3 * s2) * q1 + (s3 - s2) * m1;
        const double dqs = (6 * s2 - 6 * s) * q0 + (3 * s2 - 4 * s + 1) * m0 +
                           (-6 * s2 + 6 * s) * q1 + (3 * s2 - 2 * s) * m1;
        return {q, dqs / (2.0 * d)};
      }
    }
    return {knots[seg].second + slope[seg] * (t - knots[seg].first), slope[seg]};
  };
  return LoadingProgram(
      LoadingKind::SmoothedPiecewiseLinear, [=](double t) { return eval(t).q; },
      [=](double t) { return eval(t).dq; }, knots.back().first, lip);
}

LoadingProgram LoadingProgram::reparametrized(std::function<double(double)> s,
                                              std::function<double(double)> ds,
                                              double new_horizon,
                                              double ds_bound) const {
  auto q = q_;
  auto dq = dq_;
  return LoadingProgram(
      LoadingKind::Reparametrized, [=](double t) { return q(s(t)); },
      [=](double t) { return dq(s(t)) * ds(t); }, new_horizon,
      lipschitz_ * ds_bound);
}

StoredEnergy::StoredEnergy(std::function<double(double)> phi,
                           std::function<double(double)> dphi,
                           std::function<double(double)> inv, double convexity)
    : phi_(std::move(phi)),
      dphi_(std::move(dphi)),
      inv_(std::move(inv)),
      convexity_(convexity) {
  if (!(convexity_ > 0.0)) {
    throw Error(ErrorKind::InvalidSystem,
                "stored energy must be uniformly convex (modulus > 0)");
  }
}

StoredEnergy StoredEnergy::quadratic(double k_h) {
  if (!(k_h > 0.0)) {
    throw Error(ErrorKind::InvalidSystem, "spring stiffness k_h must be positive");
  }
  return StoredEnergy([=](double z) { return 0.5 * k_h * z * z; },
                      [=](double z) { return k_h * z; },
                      [=](double f) { return f / k_h; }, k_h);
}

StoredEnergy StoredEnergy::custom(std::function<double(double)> phi,
                                  std::function<double(double)> dphi,
                                  std::function<double(double)> dphi_inverse,
                                  double convexity) {
  if (!phi || !dphi || !dphi_inverse) {
    throw Error(ErrorKind::InvalidSystem,
                "custom stored energy needs Phi, Phi' and (Phi')^-1");
  }
  return StoredEnergy(std::move(phi), std::move(dphi), std::move(dphi_inverse),
                      convexity);
}

}  // namespace wfl
