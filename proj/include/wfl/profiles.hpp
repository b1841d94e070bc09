#ifndef WFL_PROFILES_HPP
#define WFL_PROFILES_HPP

#include <span>
#include <vector>

namespace wfl {

enum class ProfileKind { SingleSinusoid, FourierSeries };

/// One term A sin(2 pi n x + phase) of a roughness profile.
struct FourierTerm {
  double amplitude = 0.0;
  int harmonic = 1;
  double phase = 0.0;
};

inline constexpr int kMaxHarmonic = 64;

/// A 1-periodic roughness profile w given as a finite sine series. Only
/// integer harmonics are accepted, so periodicity holds by construction and
/// every derivative is available in closed form.
class SurfaceProfile {
 public:
  static SurfaceProfile sinusoid(double amplitude, double phase = 0.0);
  /// Single sinusoid whose slope w' oscillates between -omega and +omega.
  static SurfaceProfile sinusoid_with_slope(double omega);
  static SurfaceProfile fourier(std::vector<FourierTerm> terms);
  /// w == 0. Useful for relaxation tests; rejected by derivative_extrema.
  static SurfaceProfile flat();

  ProfileKind kind() const { return kind_; }
  std::span<const FourierTerm> terms() const { return terms_; }
  int max_harmonic() const;
  bool is_flat() const;

  /// d^order w / dx^order at x, order in {0,1,2,3}.
  double eval(double x, int order) const;
  double value(double x) const { return eval(x, 0); }
  double slope(double x) const { return eval(x, 1); }
  double curvature(double x) const { return eval(x, 2); }

  /// Upper bound on max |w| (sum of amplitudes; exact for one term).
  double amplitude_bound() const;

 private:
  SurfaceProfile(ProfileKind kind, std::vector<FourierTerm> terms);

  ProfileKind kind_;
  std::vector<FourierTerm> terms_;
};

struct DerivativeExtrema {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double argmax_location = 0.0;
  double argmin_location = 0.0;
};

/// w, w' or w'' at x (order in {0,1,2}).
double eval_profile(const SurfaceProfile& profile, double x, int order);

/// The epsilon-periodic surface: order 0 gives eps*w(x/eps), order 1 gives
/// w'(x/eps).
double scaled_profile(const SurfaceProfile& profile, double epsilon, double x,
                      int order);

/// Global max and min of w' over one period: a dense scan followed by
/// Newton refinement on w'' at every discrete local extremum.
DerivativeExtrema derivative_extrema(const SurfaceProfile& profile);

}  // namespace wfl

#endif
