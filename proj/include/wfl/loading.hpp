#ifndef WFL_LOADING_HPP
#define WFL_LOADING_HPP

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace wfl {

enum class LoadingKind { Ramp, Sinusoid, SmoothedPiecewiseLinear, Reparametrized };

/// Position q(t) of the driven end of the macroscopic spring on [0, T].
/// Every program is C^1 and carries a Lipschitz bound for q.
class LoadingProgram {
 public:
  /// q(t) = q0 + rate t.
  static LoadingProgram ramp(double q0, double rate, double horizon);
  /// q(t) = mean + amplitude sin(omega t + phase).
  static LoadingProgram sinusoid(double mean, double amplitude, double omega,
                                 double phase, double horizon);
  /// Piecewise-linear interpolation of (t, q) knots; corners are replaced by
  /// cubic Hermite blends of half-width `blend` so q stays C^1. The first knot
  /// must be at t = 0; the last one fixes the horizon.
  static LoadingProgram smoothed_piecewise_linear(
      std::vector<std::pair<double, double>> knots, double blend);

  /// t -> q(s(t)) for an increasing C^1 time change s with s(0) = 0 and
  /// s(new_horizon) = horizon(). ds_bound bounds |s'| on the new interval.
  LoadingProgram reparametrized(std::function<double(double)> s,
                                std::function<double(double)> ds,
                                double new_horizon, double ds_bound) const;

  LoadingKind kind() const { return kind_; }
  double horizon() const { return horizon_; }
  double q(double t) const { return q_(t); }
  double dq(double t) const { return dq_(t); }
  /// Upper bound on |q'| over [0, T].
  double lipschitz() const { return lipschitz_; }

 private:
  LoadingProgram(LoadingKind kind, std::function<double(double)> q,
                 std::function<double(double)> dq, double horizon,
                 double lipschitz);

  LoadingKind kind_;
  std::function<double(double)> q_;
  std::function<double(double)> dq_;
  double horizon_;
  double lipschitz_;
};

/// Uniformly convex stored energy Phi with its derivative and the inverse of
/// the derivative. The quadratic k_h/2 z^2 is the default.
class StoredEnergy {
 public:
  static StoredEnergy quadratic(double k_h);
  static StoredEnergy custom(std::function<double(double)> phi,
                             std::function<double(double)> dphi,
                             std::function<double(double)> dphi_inverse,
                             double convexity);

  double operator()(double z) const { return phi_(z); }
  double derivative(double z) const { return dphi_(z); }
  double derivative_inverse(double f) const { return inv_(f); }
  /// phi in Phi'' >= phi.
  double convexity() const { return convexity_; }

 private:
  StoredEnergy(std::function<double(double)> phi,
               std::function<double(double)> dphi,
               std::function<double(double)> inv, double convexity);

  std::function<double(double)> phi_;
  std::function<double(double)> dphi_;
  std::function<double(double)> inv_;
  double convexity_;
};

}  // namespace wfl

#endif
