#ifndef WFL_NUMERICS_HPP
#define WFL_NUMERICS_HPP

#include <cmath>
#include <optional>
#include <utility>

namespace wfl::numerics {

/// Newton iteration kept inside a sign-change bracket [lo, hi]. Whenever a
/// Newton step leaves the bracket (or the derivative vanishes) the iterate
/// falls back to bisection. Returns nullopt if [lo, hi] does not bracket a
/// root or the iteration does not settle within max_iter steps.
template <class F, class DF>
std::optional<double> safeguarded_newton(F&& f, DF&& df, double lo, double hi,
                                         double x0, double tol = 1e-12,
                                         int max_iter = 100) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;

  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double dfx = df(x);
    double next = x - fx / dfx;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < tol || hi - lo < tol) return next;
    x = next;
  }
  return std::nullopt;
}

inline double clamp(double x, double lo, double hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace wfl::numerics

#endif
