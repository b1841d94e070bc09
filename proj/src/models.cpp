#include "wfl/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "wfl/error.hpp"
#include "wfl/numerics.hpp"

namespace wfl {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Solves g(p) = target for a strictly increasing g on a known bracket.
template <class G, class DG>
double invert_increasing(G&& g, DG&& dg, double target, double lo, double hi,
                         double guess) {
  auto root = numerics::safeguarded_newton(
      [&](double p) { return g(p) - target; }, dg, lo, hi, guess, 1e-12, 100);
  if (!root) {
    throw Error(ErrorKind::InversionFailure,
                "monotone inversion did not converge for target " + fmt(target));
  }
  return *root;
}

}  // namespace

double AngularSpring::theta_lim() const { return std::acos(h / L); }

std::string model_name(const BristleModel& model) {
  return std::visit(overloaded{[](const VerticalSpring&) { return "vertical"; },
                               [](const SlantedSpring&) { return "slanted"; },
                               [](const AngularSpring&) { return "angular"; }},
                    model);
}

void check_model(const BristleModel& model) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::InvalidModel, msg);
  };
  std::visit(
      overloaded{
          [&](const VerticalSpring& m) {
            if (!(m.k > 0.0)) fail("vertical: k must be positive");
            if (!(m.h > 0.0)) fail("vertical: h must be positive");
            if (m.L_rest == m.h) fail("vertical: L_rest must differ from h");
          },
          [&](const SlantedSpring& m) {
            if (!(m.k > 0.0)) fail("slanted: k must be positive");
            if (!(m.h > 0.0)) fail("slanted: h must be positive");
            if (!(m.theta > 0.0 && m.theta < kHalfPi)) {
              fail("slanted: theta must lie in (0, pi/2)");
            }
          },
          [&](const AngularSpring& m) {
            if (!(m.k > 0.0)) fail("angular: k must be positive");
            if (!(m.h > 0.0)) fail("angular: h must be positive");
            if (!(m.L > m.h)) fail("angular: rod length L must exceed h");
            if (!(m.theta_lim() > m.theta_rest && m.theta_rest > -kHalfPi)) {
              fail("angular: need theta_lim > theta_rest > -pi/2");
            }
          }},
      model);
}

bool AdmissibilityReport::admissible() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const AdmissibilityCondition& c) { return c.passed; });
}

std::string AdmissibilityReport::failures() const {
  std::string out;
  for (const auto& c : conditions) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += c.inequality + " (margin " + fmt(c.margin) + ")";
  }
  return out;
}

AdmissibilityReport validate(const BristleModel& model,
                             const DerivativeExtrema& ex) {
  AdmissibilityReport r;
  auto add = [&](std::string ineq, double margin) {
    r.conditions.push_back({std::move(ineq), margin > 0.0, margin});
  };
  std::visit(
      overloaded{
          [&](const VerticalSpring& m) {
            add("L_rest != h", std::abs(m.L_rest - m.h));
          },
          [&](const SlantedSpring& m) {
            add("omega+ < cot(theta)", 1.0 / std::tan(m.theta) - ex.omega_plus);
          },
          [&](const AngularSpring& m) {
            const double tl = m.theta_lim();
            add("-tan(theta_lim) < omega-", ex.omega_minus + std::tan(tl));
            add("omega+ < cot(theta_lim)", 1.0 / std::tan(tl) - ex.omega_plus);
          }},
      model);
  return r;
}

double energetic_factor(const BristleModel& model) {
  return std::visit(
      overloaded{[](const VerticalSpring& m) { return m.k * (m.L_rest - m.h); },
                 [](const SlantedSpring& m) {
                   const double c = std::cos(m.theta);
                   return m.k / c * (m.L_rest - m.h / c);
                 },
                 [](const AngularSpring& m) {
                   return m.k * (m.theta_lim() - m.theta_rest) /
                          std::sqrt(m.L * m.L - m.h * m.h);
                 }},
      model);
}

double slope_factor(const BristleModel& model) {
  return std::visit(
      overloaded{[](const VerticalSpring&) { return 0.0; },
                 [](const SlantedSpring& m) { return -std::tan(m.theta); },
                 [](const AngularSpring& m) {
                   return m.h / std::sqrt(m.L * m.L - m.h * m.h);
                 }},
      model);
}

double gap_constant(const BristleModel& model) {
  return std::visit(
      overloaded{[](const VerticalSpring&) { return 0.0; },
                 [](const SlantedSpring& m) { return -m.h * std::tan(m.theta); },
                 [](const AngularSpring& m) {
                   return -std::sqrt(m.L * m.L - m.h * m.h);
                 }},
      model);
}

std::pair<double, double> mu_from_omega(double omega_plus, double omega_minus,
                                        double a) {
  const double dp = 1.0 + a * omega_plus;
  const double dm = 1.0 + a * omega_minus;
  if (!(dp > 0.0) || !(dm > 0.0)) {
    throw Error(ErrorKind::InadmissibleSlopeFactor,
                "slope factor a = " + fmt(a) +
                    " violates 1/omega- < -a < 1/omega+");
  }
  return {omega_plus / dp, omega_minus / dm};
}

std::pair<double, double> split_friction(double alpha, double mu_plus,
                                         double mu_minus) {
  if (alpha > 0.0) return {alpha * mu_plus, alpha * mu_minus};
  // alpha < 0 flips the range of alpha * W': its maximum is alpha * mu-
  if (alpha < 0.0) return {alpha * mu_minus, alpha * mu_plus};
  throw Error(ErrorKind::ZeroTension, "energetic factor alpha must be nonzero");
}

FrictionCoefficients coefficients(const BristleModel& model,
                                  const SurfaceProfile& profile) {
  check_model(model);
  const DerivativeExtrema ex = derivative_extrema(profile);
  const AdmissibilityReport report = validate(model, ex);
  if (!report.admissible()) {
    throw Error(ErrorKind::InadmissibleModel,
                model_name(model) + " model inadmissible: " + report.failures());
  }
  FrictionCoefficients c;
  c.alpha = energetic_factor(model);
  if (c.alpha == 0.0) {
    throw Error(ErrorKind::ZeroTension, "energetic factor alpha is zero");
  }
  std::tie(c.mu_plus, c.mu_minus) =
      mu_from_omega(ex.omega_plus, ex.omega_minus, slope_factor(model));
  std::tie(c.rho_plus, c.rho_minus) = split_friction(c.alpha, c.mu_plus, c.mu_minus);
  return c;
}

// ---------------------------------------------------------------------------
// Perceived profile

PerceivedProfile::PerceivedProfile(SurfaceProfile base, double a)
    : base_(std::move(base)), a_(a), bound_(base_.amplitude_bound()) {
  // g must be strictly increasing; scan g' = 1 + a w' on a fine grid.
  const int n = std::max(4096, 64 * base_.max_harmonic());
  for (int i = 0; i < n; ++i) {
    const double gp = 1.0 + a_ * base_.slope(static_cast<double>(i) / n);
    if (!(gp > 0.0)) {
      throw Error(ErrorKind::InadmissibleSlopeFactor,
                  "g(p) = p + a w(p) is not monotone for a = " + fmt(a_));
    }
  }
}

double PerceivedProfile::inverse(double z) const {
  const double m = std::floor(z);
  const double r = z - m;
  if (a_ == 0.0) return z;
  const double spread = std::abs(a_) * bound_;
  const double p = invert_increasing(
      [&](double q) { return q + a_ * base_.value(q); },
      [&](double q) { return 1.0 + a_ * base_.slope(q); }, r, r - spread,
      r + spread, r - a_ * base_.value(r));
  return m + p;
}

double PerceivedProfile::value(double z) const { return base_.value(inverse(z)); }

double PerceivedProfile::slope(double z) const {
  const double ws = base_.slope(inverse(z));
  return ws / (1.0 + a_ * ws);
}

PerceivedProfile::Table PerceivedProfile::tabulate(int n) const {
  Table t;
  t.z.resize(n);
  t.value.resize(n);
  t.slope.resize(n);
  for (int i = 0; i < n; ++i) {
    const double z = static_cast<double>(i) / n;
    const double p = inverse(z);
    const double ws = base_.slope(p);
    t.z[i] = z;
    t.value[i] = base_.value(p);
    t.slope[i] = ws / (1.0 + a_ * ws);
  }
  return t;
}

std::pair<double, double> perceived_extrema(const SurfaceProfile& profile,
                                            double a) {
  const PerceivedProfile perceived(profile, a);
  const int n = 8192;
  const auto table = perceived.tabulate(n);
  const double h = 1.0 / n;

  double best_max = -HUGE_VAL;
  double best_min = HUGE_VAL;
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  for (int i = 0; i < n; ++i) {
    const double s = table.slope[i];
    const double prev = table.slope[(i + n - 1) % n];
    const double next = table.slope[(i + 1) % n];
    const double z = table.z[i];
    if (s >= prev && s >= next) {
      auto [zx, neg] = boost::math::tools::brent_find_minima(
          [&](double x) { return -perceived.slope(x); }, z - h, z + h, bits);
      best_max = std::max({best_max, s, -neg});
    }
    if (s <= prev && s <= next) {
      auto [zx, v] = boost::math::tools::brent_find_minima(
          [&](double x) { return perceived.slope(x); }, z - h, z + h, bits);
      best_min = std::min({best_min, s, v});
    }
  }
  return {best_max, best_min};
}

// ---------------------------------------------------------------------------
// Wiggly potential

double epsilon_validity_bound(const BristleModel& model,
                              const DerivativeExtrema& ex) {
  return std::visit(
      overloaded{[](const VerticalSpring& m) { return 0.5 * m.h; },
                 [&](const SlantedSpring& m) {
                   const double rough =
                       m.h * (1.0 - std::tan(m.theta) * ex.omega_plus) / 2.0;
                   return 0.5 * std::min(m.h, rough);
                 },
                 [](const AngularSpring& m) {
                   return 0.5 * std::min(m.h, m.L - m.h);
                 }},
      model);
}

WigglyPotential::WigglyPotential(BristleModel model, SurfaceProfile profile,
                                 double epsilon)
    : model_(std::move(model)),
      profile_(std::move(profile)),
      epsilon_(epsilon),
      bound_(profile_.amplitude_bound()) {
  if (!(epsilon_ > 0.0)) {
    throw Error(ErrorKind::InvalidScale, "epsilon must be positive");
  }
  check_model(model_);
  DerivativeExtrema ex{};
  if (!profile_.is_flat()) {
    ex = derivative_extrema(profile_);
    const auto report = validate(model_, ex);
    if (!report.admissible()) {
      throw Error(ErrorKind::InadmissibleModel, model_name(model_) +
                                                    " model inadmissible: " +
                                                    report.failures());
    }
  }
  const double limit = epsilon_validity_bound(model_, ex);
  if (!(epsilon_ * bound_ < limit)) {
    throw Error(ErrorKind::Validity,
                "epsilon = " + fmt(epsilon_) + " too large: eps*max|w| = " +
                    fmt(epsilon_ * bound_) + " must be below " + fmt(limit));
  }
  if (const auto* m = std::get_if<AngularSpring>(&model_); m && !profile_.is_flat()) {
    // Contact stays at the tip and p(z) stays monotone over the whole range
    // of surface heights actually reached at this epsilon.
    const double ymax = epsilon_ * bound_;
    const double theta_lo = std::acos((m->h + ymax) / m->L);
    const double theta_hi = std::acos((m->h - ymax) / m->L);
    if (!(1.0 + ex.omega_minus / std::tan(theta_lo) > 0.0) ||
        !(ex.omega_plus * std::tan(theta_hi) < 1.0)) {
      throw Error(ErrorKind::Validity,
                  "epsilon = " + fmt(epsilon_) +
                      " breaks tip contact of the angular model");
    }
  }
}

double WigglyPotential::mediator_energy(double y) const {
  return std::visit(
      overloaded{[&](const VerticalSpring& m) {
                   const double d = m.L_rest - m.h + y;
                   return 0.5 * m.k * d * d;
                 },
                 [&](const SlantedSpring& m) {
                   const double d = m.L_rest - (m.h - y) / std::cos(m.theta);
                   return 0.5 * m.k * d * d;
                 },
                 [&](const AngularSpring& m) {
                   const double d = std::acos((m.h - y) / m.L) - m.theta_rest;
                   return 0.5 * m.k * d * d;
                 }},
      model_);
}

double WigglyPotential::mediator_denergy(double y) const {
  return std::visit(
      overloaded{[&](const VerticalSpring& m) { return m.k * (m.L_rest - m.h + y); },
                 [&](const SlantedSpring& m) {
                   const double c = std::cos(m.theta);
                   return m.k * (m.L_rest - (m.h - y) / c) / c;
                 },
                 [&](const AngularSpring& m) {
                   const double u = m.h - y;
                   return m.k * (std::acos(u / m.L) - m.theta_rest) /
                          std::sqrt(m.L * m.L - u * u);
                 }},
      model_);
}

WigglyPotential::Contact WigglyPotential::contact(double z) const {
  const double eps = epsilon_;
  const double Z = z / eps;
  return std::visit(
      overloaded{
          [&](const VerticalSpring&) {
            return Contact{eps * profile_.value(Z), profile_.slope(Z)};
          },
          [&](const SlantedSpring& m) {
            const double t = std::tan(m.theta);
            const double base = std::floor(Z);
            const double r = Z - base;
            const double spread = t * bound_;
            double P = r;
            if (spread > 0.0) {
              P = invert_increasing(
                  [&](double q) { return q - t * profile_.value(q); },
                  [&](double q) { return 1.0 - t * profile_.slope(q); }, r,
                  r - spread, r + spread, r);
            }
            const double ws = profile_.slope(P);
            return Contact{eps * profile_.value(P), ws / (1.0 - t * ws)};
          },
          [&](const AngularSpring& m) {
            const double root = std::sqrt(m.L * m.L - m.h * m.h);
            auto A = [&](double y) {
              return std::sqrt(m.L * m.L - (m.h - y) * (m.h - y)) - root;
            };
            auto dA = [&](double y) {
              const double u = m.h - y;
              return u / std::sqrt(m.L * m.L - u * u);
            };
            const double base = std::floor(Z);
            const double r = Z - base;
            const double ymax = eps * bound_;
            // scaled relation: P + A(eps w(P)) / eps = r
            double P = r;
            if (ymax > 0.0) {
              P = invert_increasing(
                  [&](double q) { return q + A(eps * profile_.value(q)) / eps; },
                  [&](double q) {
                    return 1.0 + dA(eps * profile_.value(q)) * profile_.slope(q);
                  },
                  r, r - A(ymax) / eps, r - A(-ymax) / eps, r);
            }
            const double y = eps * profile_.value(P);
            const double ws = profile_.slope(P);
            const double dz_dp = 1.0 + dA(y) * ws;
            if (!(dz_dp > 0.0)) {
              throw Error(ErrorKind::Geometry,
                          "angular model lost monotone contact at z = " + fmt(z));
            }
            return Contact{y, ws / dz_dp};
          }},
      model_);
}

double WigglyPotential::energy(double z) const {
  return mediator_energy(contact(z).y) - mediator_energy(0.0);
}

double WigglyPotential::force(double z) const {
  const Contact c = contact(z);
  return mediator_denergy(c.y) * c.dy_dz;
}

double wiggly_force(const BristleModel& model, const SurfaceProfile& profile,
                    double epsilon, double z) {
  return WigglyPotential(model, profile, epsilon).force(z);
}

// ---------------------------------------------------------------------------
// Nap asymmetry

std::pair<double, double> nap_coefficients(double mu_plus, double theta_lim,
                                           double theta_with) {
  if (!(mu_plus > 0.0)) throw Error(ErrorKind::Domain, "mu+ must be positive");
  if (!(theta_with >= 0.0 && theta_with < theta_lim && theta_lim < kHalfPi)) {
    throw Error(ErrorKind::Domain,
                "nap angles must satisfy 0 <= theta_with < theta_lim < pi/2");
  }
  const double factor = mu_plus / std::tan(theta_lim);
  return {factor * (theta_lim - theta_with), factor * (theta_lim + theta_with)};
}

double axial_tension(const AngularSpring& model, double rho) {
  const double tl = model.theta_lim();
  return -(model.k / model.L) * (tl - model.theta_rest) / std::tan(tl) +
         rho / std::sin(tl);
}

}  // namespace wfl
