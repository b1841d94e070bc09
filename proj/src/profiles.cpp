#include "wfl/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wfl/error.hpp"
#include "wfl/numerics.hpp"

namespace wfl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double x) { return x - std::floor(x); }

}  // namespace

SurfaceProfile::SurfaceProfile(ProfileKind kind, std::vector<FourierTerm> terms)
    : kind_(kind), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw Error(ErrorKind::InvalidProfile, "profile needs at least one term");
  }
  for (const auto& t : terms_) {
    if (t.harmonic < 1 || t.harmonic > kMaxHarmonic) {
      throw Error(ErrorKind::InvalidProfile,
                  "harmonic index must lie in [1, " +
                      std::to_string(kMaxHarmonic) + "], got " +
                      std::to_string(t.harmonic));
    }
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase)) {
      throw Error(ErrorKind::InvalidProfile, "non-finite profile coefficient");
    }
  }
}

SurfaceProfile SurfaceProfile::sinusoid(double amplitude, double phase) {
  return SurfaceProfile(ProfileKind::SingleSinusoid, {{amplitude, 1, phase}});
}

SurfaceProfile SurfaceProfile::sinusoid_with_slope(double omega) {
  return sinusoid(omega / kTwoPi);
}

SurfaceProfile SurfaceProfile::fourier(std::vector<FourierTerm> terms) {
  return SurfaceProfile(ProfileKind::FourierSeries, std::move(terms));
}

SurfaceProfile SurfaceProfile::flat() { return sinusoid(0.0); }

int SurfaceProfile::max_harmonic() const {
  int n = 1;
  for (const auto& t : terms_) n = std::max(n, t.harmonic);
  return n;
}

bool SurfaceProfile::is_flat() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const FourierTerm& t) { return t.amplitude == 0.0; });
}

double SurfaceProfile::eval(double x, int order) const {
  const double u = wrap_unit(x);
  double sum = 0.0;
  for (const auto& t : terms_) {
    const double k = kTwoPi * t.harmonic;
    const double arg = k * u + t.phase;
    switch (order) {
      case 0: sum += t.amplitude * std::sin(arg); break;
      case 1: sum += t.amplitude * k * std::cos(arg); break;
      case 2: sum -= t.amplitude * k * k * std::sin(arg); break;
      case 3: sum -= t.amplitude * k * k * k * std::cos(arg); break;
      default:
        throw Error(ErrorKind::Domain,
                    "derivative order must be 0..3, got " + std::to_string(order));
    }
  }
  return sum;
}

double SurfaceProfile::amplitude_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.amplitude);
  return s;
}

double eval_profile(const SurfaceProfile& profile, double x, int order) {
  if (order < 0 || order > 2) {
    throw Error(ErrorKind::Domain, "eval_profile order must be 0, 1 or 2");
  }
  return profile.eval(x, order);
}

double scaled_profile(const SurfaceProfile& profile, double epsilon, double x,
                      int order) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidScale, "epsilon must be positive");
  }
  switch (order) {
    case 0: return epsilon * profile.value(x / epsilon);
    case 1: return profile.slope(x / epsilon);
    default:
      throw Error(ErrorKind::Domain, "scaled_profile order must be 0 or 1");
  }
}

namespace {

// Refines a discrete extremum of w' at x_i = i/n. sign = +1 for a maximum.
std::pair<double, double> refine_slope_extremum(const SurfaceProfile& p,
                                                double xi, double h,
                                                double sampled, int sign) {
  auto root = numerics::safeguarded_newton(
      [&](double x) { return p.eval(x, 2); },
      [&](double x) { return p.eval(x, 3); }, xi - h, xi + h, xi, 1e-12);
  if (!root) return {xi, sampled};
  const double v = p.slope(*root);
  // a bracketed root of w'' can be the wrong kind of critical point only if
  // the scan missed structure; keep whichever is better.
  if (sign * v >= sign * sampled) return {wrap_unit(*root), v};
  return {xi, sampled};
}

}  // namespace

DerivativeExtrema derivative_extrema(const SurfaceProfile& profile) {
  const int n = std::max(4096, 64 * profile.max_harmonic());
  const double h = 1.0 / n;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = profile.slope(i * h);

  DerivativeExtrema ex;
  ex.omega_plus = -HUGE_VAL;
  ex.omega_minus = HUGE_VAL;
  for (int i = 0; i < n; ++i) {
    const double prev = s[(i + n - 1) % n];
    const double next = s[(i + 1) % n];
    if (s[i] >= prev && s[i] >= next) {
      auto [x, v] = refine_slope_extremum(profile, i * h, h, s[i], +1);
      if (v > ex.omega_plus) {
        ex.omega_plus = v;
        ex.argmax_location = x;
      }
    }
    if (s[i] <= prev && s[i] <= next) {
      auto [x, v] = refine_slope_extremum(profile, i * h, h, s[i], -1);
      if (v < ex.omega_minus) {
        ex.omega_minus = v;
        ex.argmin_location = x;
      }
    }
  }
  if (!(ex.omega_plus > 0.0) || !(ex.omega_minus < 0.0)) {
    throw Error(ErrorKind::DegenerateProfile,
                "profile slope must take both signs (omega+ > 0 > omega-)");
  }
  return ex;
}

}  // namespace wfl
