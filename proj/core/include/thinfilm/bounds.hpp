#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>

#include "thinfilm/diagnostics.hpp"
#include "thinfilm/forcing.hpp"
#include "thinfilm/model.hpp"

namespace thinfilm {

/// Constants entering the decay envelopes, all in closed form.
struct EnvelopeParams {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  double length = 0.0;
  double alpha = 1.0;
  bool ellis = false;
  double prefactor = 1.0;  // a (power-law) or b (Ellis)

  double u0_mean = 0.0;
  double u0_min = 0.0;
  double ux0 = 0.0;  // ||u0_x||_2

  double m = kNaN;   // mean(u0) - sqrt(L) ||u0_x||
  double m1 = kNaN;  // a 2^{(alpha+1)/2} L^{-(5alpha+3)/2} m^{alpha+2}
  double m2 = kNaN;  // 2 b m^3 L^{-4}
  double C6 = kNaN;  // L^{-(5alpha+3)/2}
  double h = kNaN;   // height floor for the constant-force regime
  double eps_floor = kNaN;
  int h_case = 0;    // 1: small initial slope, 2: large slope with f0 > 0, 0: none
  double C1 = 0.0;   // L/pi + 1
  double C4 = 0.0;   // (L/pi)^2 + 1
  double C3 = 0.0;   // 2 C4
  double M0 = kNaN;  // ||u0_x|| + int_0^inf ||f_x||; +inf for a static force
  double G = 0.0;    // ||f_x|| / g(t)
  ForceRegime regime = ForceRegime::Constant;
  double f0 = 0.0;

  HypothesisVerdict hyp;
  /// Hypotheses of the theorem that matches this force regime hold.
  bool applicable = false;
  std::string reason;  // why not applicable, empty otherwise
};

EnvelopeParams compute_params(const CosineProfile& u0, const Force& force, const FluidModel& model);

/// Decaying force, power-law film. Throws Unavailable when m <= 0 or M0 is infinite.
double envelope_time_dependent(const EnvelopeParams& p, const Force& force, double t);

/// Static force, power-law film.
double envelope_time_independent(const EnvelopeParams& p, double t);

/// Constant force, power-law film; bound on the H1 distance to mean(u0) + f0 t.
double envelope_f0(const EnvelopeParams& p, double t);

/// Upper bound on the extinction time for alpha < 1 in the constant-force regime.
std::optional<double> predicted_extinction_bound(const EnvelopeParams& p);

/// Ellis film under the given force regime; a zero constant force uses the
/// decaying-force form with M0 = ||u0_x||.
double envelope_ellis(const EnvelopeParams& p, const Force& force, double t);

/// The envelope matching the model and force regime, NaN when the hypotheses
/// are unmet.
double envelope_for(const EnvelopeParams& p, const Force& force, double t);

/// Short label of the envelope family used by envelope_for.
std::string envelope_family(const EnvelopeParams& p, const Force& force);

/// (8/t + 8 int_{t/4}^t ||f_x||^2) * int_{t/4}^t E over the recorded history.
double dissipation_window_bound(const EnvelopeParams& p, std::span<const SimRecord> records, const Force& force,
                                double t);

}  // namespace thinfilm
