#ifndef WFL_MODELS_HPP
#define WFL_MODELS_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wfl/profiles.hpp"

namespace wfl {

/// Vertical spring of stiffness k and rest length L_rest whose fixed end sits
/// at height h above the mean surface.
struct VerticalSpring {
  double k = 1.0;
  double L_rest = 2.0;
  double h = 1.0;
};

/// Spring kept at a fixed angle theta from the vertical.
struct SlantedSpring {
  double k = 1.0;
  double L_rest = 2.0;
  double h = 1.0;
  double theta = 0.0;
};

/// Rigid rod of length L hinged at height h, with an angular spring of
/// stiffness k and rest angle theta_rest.
struct AngularSpring {
  double k = 1.0;
  double L = 2.0;
  double h = 1.0;
  double theta_rest = 0.0;

  /// Contact angle on the flat surface, arccos(h/L).
  double theta_lim() const;
};

using BristleModel = std::variant<VerticalSpring, SlantedSpring, AngularSpring>;

std::string model_name(const BristleModel& model);

/// Intrinsic parameter checks (positivity, L_rest != h, angle ranges).
/// Throws Error(InvalidModel).
void check_model(const BristleModel& model);

struct AdmissibilityCondition {
  std::string inequality;
  bool passed = false;
  /// Signed slack: positive when the inequality holds.
  double margin = 0.0;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityCondition> conditions;

  bool admissible() const;
  /// "ineq (margin m); ..." for every failing condition.
  std::string failures() const;
};

AdmissibilityReport validate(const BristleModel& model,
                             const DerivativeExtrema& extrema);

struct FrictionCoefficients {
  double alpha = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
};

/// Energetic factor alpha = F'(0) of the mediating element.
double energetic_factor(const BristleModel& model);

/// Slope factor a in g(p) = p + a w(p): 0, -tan(theta) or cot(theta_lim).
double slope_factor(const BristleModel& model);

/// Offset c in z = u + c; metadata only, never enters the dynamics.
double gap_constant(const BristleModel& model);

/// Extremes of the perceived slope, omega/(1 + a omega). Requires
/// 1 + a omega_plus > 0 and 1 + a omega_minus > 0.
std::pair<double, double> mu_from_omega(double omega_plus, double omega_minus,
                                        double a);

/// (rho_plus, rho_minus) from the geometric and energetic factors; the
/// ordering of mu swaps when alpha < 0.
std::pair<double, double> split_friction(double alpha, double mu_plus,
                                         double mu_minus);

FrictionCoefficients coefficients(const BristleModel& model,
                                  const SurfaceProfile& profile);

/// The profile as seen through g(p) = p + a w(p): W(z) = w(g^-1(z)).
class PerceivedProfile {
 public:
  PerceivedProfile(SurfaceProfile base, double a);

  const SurfaceProfile& base() const { return base_; }
  double slope_factor() const { return a_; }

  /// g^-1(z), with g^-1(z + 1) = g^-1(z) + 1.
  double inverse(double z) const;
  double value(double z) const;
  double slope(double z) const;

  struct Table {
    std::vector<double> z;
    std::vector<double> value;
    std::vector<double> slope;
  };
  /// n samples on [0, 1).
  Table tabulate(int n) const;

 private:
  SurfaceProfile base_;
  double a_;
  double bound_;
};

/// Extremes of W' found numerically by inverting g, independently of the
/// closed form in mu_from_omega.
std::pair<double, double> perceived_extrema(const SurfaceProfile& profile,
                                            double a);

/// Largest admissible epsilon: eps * max|w| must stay below this.
double epsilon_validity_bound(const BristleModel& model,
                              const DerivativeExtrema& extrema);

/// Exact internal energy V_eps(z) of the mediating element (relative to the
/// flat configuration) and its derivative in z.
class WigglyPotential {
 public:
  WigglyPotential(BristleModel model, SurfaceProfile profile, double epsilon);

  double epsilon() const { return epsilon_; }
  const BristleModel& model() const { return model_; }
  const SurfaceProfile& profile() const { return profile_; }

  double energy(double z) const;
  double force(double z) const;

 private:
  struct Contact {
    double y;      // surface height under the contact point
    double dy_dz;  // derivative of y along the state coordinate
  };
  Contact contact(double z) const;
  double mediator_energy(double y) const;
  double mediator_denergy(double y) const;

  BristleModel model_;
  SurfaceProfile profile_;
  double epsilon_;
  double bound_;
};

double wiggly_force(const BristleModel& model, const SurfaceProfile& profile,
                    double epsilon, double z);

/// Friction with and against the nap when the rest angle flips sign with
/// the direction of motion.
std::pair<double, double> nap_coefficients(double mu_plus, double theta_lim,
                                           double theta_with);

/// Axial tension of the rod sliding with friction rho on the flat surface.
double axial_tension(const AngularSpring& model, double rho);

}  // namespace wfl

#endif
