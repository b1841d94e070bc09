#include "wfl/trajectory.hpp"

#include <algorithm>

#include "wfl/error.hpp"

namespace wfl {

std::vector<double> uniform_grid(double horizon, std::size_t n) {
  if (n == 0 || !(horizon > 0.0)) {
    throw Error(ErrorKind::Domain, "grid needs n >= 1 and a positive horizon");
  }
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    g[i] = horizon * static_cast<double>(i) / static_cast<double>(n);
  }
  g.back() = horizon;
  return g;
}

double interpolate(const std::vector<double>& times,
                   const std::vector<double>& values, double t) {
  if (times.empty()) throw Error(ErrorKind::Domain, "empty channel");
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin());
  const double t0 = times[i - 1], t1 = times[i];
  const double s = (t - t0) / (t1 - t0);
  return values[i - 1] + s * (values[i] - values[i - 1]);
}

}  // namespace wfl
