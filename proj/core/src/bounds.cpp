#include "thinfilm/bounds.hpp"

#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "thinfilm/error.hpp"

namespace thinfilm {

namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lower_bound(const EnvelopeParams& p) {
  if (!(p.m > 0.0)) {
    throw Error(ErrorKind::Unavailable, "lower height bound m = " + std::to_string(p.m) + " is not positive");
  }
}

// int_{t/2}^t ||f_x(s)|| e^{-rho (t - s)} ds
double discounted_tail(const Force& force, double rho, double t) {
  const double amp = force.grad_amplitude();
  if (amp == 0.0 || t <= 0.0) return 0.0;
  const double half = 0.5 * t;
  const TimeProfile* g = force.time_profile();
  if (g == nullptr) {
    // g = 1: amp (1 - e^{-rho t/2}) / rho
    if (rho == 0.0) return amp * half;
    return -amp * std::expm1(-rho * half) / rho;
  }
  if (const auto* e = std::get_if<ExpDecay>(g)) {
    // amp e^{-kappa t} (1 - e^{-(rho - kappa) t/2}) / (rho - kappa), with the
    // equal-rate limit amp e^{-kappa t} t/2.
    const double d = rho - e->kappa;
    const double lead = amp * std::exp(-e->kappa * t);
    if (d == 0.0) return lead * half;
    return -lead * std::expm1(-d * half) / d;
  }
  return detail::integrate([&](double s) { return force.grad_l2_norm(s) * std::exp(-rho * (t - s)); }, half, t,
                           1e-10 * std::max(1e-300, amp));
}

}  // namespace

EnvelopeParams compute_params(const CosineProfile& u0, const Force& force, const FluidModel& model) {
  EnvelopeParams p;
  const double L = force.length();
  u0.validate(L, "u0");
  p.length = L;
  p.alpha = model.alpha();
  p.ellis = model.is_ellis();
  p.prefactor = model.prefactor();
  p.u0_mean = u0.A;
  p.u0_min = u0.min_value();
  p.ux0 = u0.slope_l2(L);
  p.regime = force.regime();
  p.f0 = (p.regime == ForceRegime::Constant) ? force.space().A : 0.0;
  p.G = force.grad_amplitude();
  p.hyp = hypothesis_check(force, u0, L);

  p.C1 = L / pi + 1.0;
  p.C4 = (L / pi) * (L / pi) + 1.0;
  p.C3 = 2.0 * p.C4;
  p.C6 = std::pow(L, -0.5 * (5.0 * p.alpha + 3.0));
  p.m = p.u0_mean - std::sqrt(L) * p.ux0;
  if (p.m > 0.0) {
    p.m1 = p.prefactor * std::pow(2.0, 0.5 * (p.alpha + 1.0)) * p.C6 * std::pow(p.m, p.alpha + 2.0);
    p.m2 = 2.0 * p.prefactor * p.m * p.m * p.m * std::pow(L, -4.0);
    p.h = p.m;
    p.h_case = 1;
  } else if (p.regime == ForceRegime::Constant && p.f0 > 0.0 && p.u0_min + p.m > 0.0) {
    p.eps_floor = 0.5 * (p.u0_min + p.m);
    p.h = -p.m + p.eps_floor;
    p.h_case = 2;
  }

  switch (p.regime) {
    case ForceRegime::TimeDependent: p.M0 = p.ux0 + force.cumulative_grad_norm(0.0, kInf); break;
    case ForceRegime::TimeIndependent: p.M0 = (p.G == 0.0) ? p.ux0 : kInf; break;
    case ForceRegime::Constant: p.M0 = p.ux0; break;
  }

  const bool zero_const = p.regime == ForceRegime::Constant && p.f0 == 0.0;
  if (p.regime == ForceRegime::Constant && !(p.ellis && zero_const)) {
    p.applicable = p.h_case != 0;
    if (!p.applicable) p.reason = "no positive height floor: initial slope too large";
  } else {
    p.applicable = p.hyp.all();
    if (!p.hyp.initial_slope) {
      p.reason = "initial slope condition fails";
    } else if (!p.hyp.force_gradient) {
      p.reason = "force gradient condition fails";
    } else if (!std::isfinite(p.M0) && p.regime == ForceRegime::TimeDependent) {
      p.applicable = false;
      p.reason = "force gradient is not integrable in time";
    }
  }
  return p;
}

double envelope_time_dependent(const EnvelopeParams& p, const Force& force, double t) {
  require_lower_bound(p);
  if (!std::isfinite(p.M0)) throw Error(ErrorKind::Unavailable, "M0 is infinite for this force");
  const double a = p.alpha;
  const double r = std::pow(2.0, -0.5 * (a + 3.0)) * p.m1;
  if (a > 1.0) {
    const double main =
        p.M0 * std::pow(1.0 + r * (a - 1.0) * std::pow(p.M0, a - 1.0) * t, 1.0 / (1.0 - a));
    return p.C1 * (main + force.cumulative_grad_norm(0.5 * t, t));
  }
  const double rho = (p.M0 > 0.0) ? r * std::pow(p.M0, a - 1.0) : 0.0;
  return p.C1 * (p.M0 * std::exp(-rho * t) + discounted_tail(force, rho, t));
}

double envelope_time_independent(const EnvelopeParams& p, double t) {
  require_lower_bound(p);
  const double a = p.alpha;
  const double q = std::pow(std::sqrt(2.0) * p.G / p.m1, 1.0 / a);
  if (p.ux0 <= std::sqrt(2.0) * q) return std::sqrt(p.C3) * q;
  if (a > 1.0) {
    const double c2 = p.ux0 / std::sqrt(2.0) - q;
    return std::sqrt(p.C3) *
           (q + std::pow(std::pow(c2, 1.0 - a) + p.m1 * (a - 1.0) * 0.5 * t, 1.0 / (1.0 - a)));
  }
  const double s = std::pow(2.0, 0.5 * (a + 1.0)) * (p.G / p.m1) * std::pow(p.ux0, 1.0 - a);
  const double c5 = p.ux0 - s;
  const double rate = std::pow(2.0, -0.5 * (a + 1.0)) * p.m1 * std::pow(p.ux0, a - 1.0);
  return std::sqrt(p.C4) * (s + c5 * std::exp(-rate * t));
}

namespace {

double f0_rate(const EnvelopeParams& p) { return p.prefactor * p.C6 * std::pow(p.h, p.alpha + 2.0); }

void require_floor(const EnvelopeParams& p) {
  if (p.h_case == 0 || !(p.h > 0.0)) {
    throw Error(ErrorKind::Unavailable, "no positive height floor for the constant-force regime");
  }
}

}  // namespace

double envelope_f0(const EnvelopeParams& p, double t) {
  require_floor(p);
  if (p.ux0 == 0.0) return 0.0;
  const double a = p.alpha;
  const double rate = f0_rate(p);
  const double sc4 = std::sqrt(p.C4);
  if (a == 1.0) return sc4 * p.ux0 * std::exp(-rate * t);
  if (a < 1.0) {
    // exactly zero from the extinction time on, whatever the rounding
    if (t >= std::pow(p.ux0, 1.0 - a) / ((1.0 - a) * rate)) return 0.0;
    const double base = std::pow(p.ux0, 1.0 - a) - (1.0 - a) * rate * t;
    return sc4 * std::pow(base, 1.0 / (1.0 - a));
  }
  return sc4 * std::pow(std::pow(p.ux0, 1.0 - a) + (a - 1.0) * rate * t, 1.0 / (1.0 - a));
}

std::optional<double> predicted_extinction_bound(const EnvelopeParams& p) {
  if (p.ellis || !(p.alpha < 1.0) || p.h_case == 0 || p.regime != ForceRegime::Constant) return std::nullopt;
  return std::pow(p.ux0, 1.0 - p.alpha) / ((1.0 - p.alpha) * f0_rate(p));
}

double envelope_ellis(const EnvelopeParams& p, const Force& force, double t) {
  const double sc4 = std::sqrt(p.C4);
  if (p.regime == ForceRegime::Constant && p.f0 > 0.0) {
    require_floor(p);
    const double rate = p.prefactor * p.h * p.h * p.h * std::pow(p.length, -4.0);
    return sc4 * p.ux0 * std::exp(-rate * t);
  }
  require_lower_bound(p);
  if (p.regime == ForceRegime::TimeIndependent) {
    const double q = 2.0 * p.G / p.m2;
    if (p.ux0 <= q) return sc4 * q;
    return sc4 * (q + (p.ux0 - q) * std::exp(-0.5 * p.m2 * t));
  }
  if (!std::isfinite(p.M0)) throw Error(ErrorKind::Unavailable, "M0 is infinite for this force");
  return p.C1 * (p.M0 * std::exp(-0.25 * p.m2 * t) + force.cumulative_grad_norm(0.5 * t, t));
}

double envelope_for(const EnvelopeParams& p, const Force& force, double t) {
  if (!p.applicable) return EnvelopeParams::kNaN;
  try {
    if (p.ellis) return envelope_ellis(p, force, t);
    switch (p.regime) {
      case ForceRegime::TimeDependent: return envelope_time_dependent(p, force, t);
      case ForceRegime::TimeIndependent: return envelope_time_independent(p, t);
      case ForceRegime::Constant: return envelope_f0(p, t);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unavailable) throw;
  }
  return EnvelopeParams::kNaN;
}

std::string envelope_family(const EnvelopeParams& p, const Force&) {
  std::string base;
  switch (p.regime) {
    case ForceRegime::TimeDependent: base = "decaying-force"; break;
    case ForceRegime::TimeIndependent: base = "static-force"; break;
    case ForceRegime::Constant: base = (p.ellis && p.f0 == 0.0) ? "zero-force" : "constant-force"; break;
  }
  return p.ellis ? "ellis/" + base : "power-law/" + base;
}

double dissipation_window_bound(const EnvelopeParams&, std::span<const SimRecord> records, const Force& force,
                                double t) {
  if (!(t > 0.0)) return 0.0;
  constexpr double kCutoff = 8.0;
  const double energy_int = integrate_records(records, &SimRecord::energy, 0.25 * t, t);
  return (kCutoff / t + kCutoff * force.cumulative_grad_norm_sq(0.25 * t, t)) * energy_int;
}

}  // namespace thinfilm
