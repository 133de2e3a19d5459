#pragma once

#include <string>
#include <variant>
#include <vector>

namespace thinfilm {

/// A + B cos(pi x / m) on (0, L) with L = k m for a positive integer k.
struct CosineProfile {
  double A = 1.0;
  double B = 0.0;
  double m = 1.0;

  double operator()(double x) const;
  double derivative(double x) const;
  double min_value() const;
  /// Number of half periods k = L / m.
  double half_periods(double length) const { return length / m; }
  /// ||d/dx profile||_2 over (0, L), closed form |B| (pi/m) sqrt(L/2).
  double slope_l2(double length) const;
  /// k |B| pi < sqrt(2) A
  bool amplitude_condition(double length) const;

  /// Throws ConfigError("<prefix>.A" / ".m") on bad parameters or when L/m is
  /// not an integer (only enforced when B != 0).
  void validate(double length, const std::string& prefix) const;
};

struct ExpDecay {
  double kappa = 1.0;
};

struct PowerDecay {
  double beta = 2.0;
};

/// Piecewise-linear g(t) through (t_k, g_k), held constant after the last node.
/// Integrals are exact for the interpolant (trapezoid rule).
class Tabulated {
 public:
  Tabulated(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  double integral(double t0, double t1) const;
  double integral_sq(double t0, double t1) const;
  const std::vector<double>& times() const noexcept { return t_; }
  const std::vector<double>& values() const noexcept { return g_; }

 private:
  double primitive(double t) const;
  double primitive_sq(double t) const;

  std::vector<double> t_;
  std::vector<double> g_;
  std::vector<double> cum_;
  std::vector<double> cum_sq_;
};

using TimeProfile = std::variant<ExpDecay, PowerDecay, Tabulated>;

enum class ForceRegime { TimeDependent, TimeIndependent, Constant };

const char* to_string(ForceRegime regime) noexcept;

/// f(t, x) = g(t) s(x) with s a cosine profile. Time-independent forces use
/// g = 1; a constant force f0 is the flat profile s = f0.
class Force {
 public:
  static Force time_dependent(TimeProfile g, CosineProfile space, double length);
  static Force time_independent(CosineProfile space, double length);
  /// f0 < 0 throws DryOut.
  static Force constant(double f0, double length);
  static Force none(double length) { return constant(0.0, length); }

  ForceRegime regime() const noexcept { return regime_; }
  double length() const noexcept { return length_; }
  const CosineProfile& space() const noexcept { return space_; }
  const TimeProfile* time_profile() const noexcept;
  /// True when integrals come from a tabulated g rather than closed forms.
  bool numeric() const noexcept;
  bool decays() const noexcept { return regime_ == ForceRegime::TimeDependent; }
  std::string describe() const;

  double g(double t) const;
  /// Integral of g over [t0, t1]; t1 may be +infinity.
  double g_integral(double t0, double t1) const;
  double g_sq_integral(double t0, double t1) const;

  double eval(double t, double x) const;
  double grad_l2_norm(double t) const;
  /// ||f_x|| / g(t): the time-free gradient amplitude.
  double grad_amplitude() const;
  double mass_rate(double t) const;
  double cumulative_mass(double t) const;
  /// Integral of ||f_x(s)||_2 over [t0, t1]; +infinity for a non-flat
  /// time-independent force on an infinite interval.
  double cumulative_grad_norm(double t0, double t1) const;
  /// Integral of ||f_x(s)||_2^2 over [t0, t1].
  double cumulative_grad_norm_sq(double t0, double t1) const;

 private:
  Force(ForceRegime regime, std::vector<TimeProfile> g, CosineProfile space, double length)
      : regime_(regime), g_(std::move(g)), space_(space), length_(length) {}

  ForceRegime regime_;
  std::vector<TimeProfile> g_;  // empty, or one time profile
  CosineProfile space_;
  double length_;
};

/// Verdicts for the decay theorem's hypotheses on cosine data.
struct HypothesisVerdict {
  bool initial_slope = false;   // ||u0_x|| < L^{-1/2} mean(u0)
  bool force_gradient = false;  // ||f_x(t)|| <= L^{-3/2} int f(t) for every t
  bool u0_amplitude = false;    // k|B|pi < sqrt(2) A for u0
  bool force_amplitude = false; // same for the force profile (true if flat)
  double u0_slope = 0.0;
  double u0_slope_limit = 0.0;
  double force_ratio = 0.0;     // ||f_x|| / int f
  double force_ratio_limit = 0.0;

  bool all() const noexcept { return initial_slope && force_gradient; }
};

HypothesisVerdict hypothesis_check(const Force& force, const CosineProfile& u0, double length);

}  // namespace thinfilm
