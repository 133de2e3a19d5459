#include "thinfilm/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "thinfilm/error.hpp"

namespace thinfilm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double CosineProfile::operator()(double x) const { return A + B * std::cos(pi * x / m); }

double CosineProfile::derivative(double x) const { return -B * (pi / m) * std::sin(pi * x / m); }

double CosineProfile::min_value() const { return A - std::abs(B); }

double CosineProfile::slope_l2(double length) const {
  return std::abs(B) * (pi / m) * std::sqrt(0.5 * length);
}

bool CosineProfile::amplitude_condition(double length) const {
  return half_periods(length) * std::abs(B) * pi < std::sqrt(2.0) * A;
}

void CosineProfile::validate(double length, const std::string& prefix) const {
  if (!std::isfinite(A) || !(A > 0.0)) throw ConfigError(prefix + ".A", "mean amplitude must be > 0");
  if (!std::isfinite(B)) throw ConfigError(prefix + ".B", "must be finite");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError(prefix + ".m", "half-period must be > 0");
  if (B != 0.0) {
    const double k = half_periods(length);
    if (k < 0.5 || std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k)) {
      std::ostringstream os;
      os << "L/m = " << k << " is not a positive integer";
      throw ConfigError(prefix + ".m", os.str());
    }
  }
}

Tabulated::Tabulated(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), g_(std::move(values)) {
  if (t_.size() < 2 || t_.size() != g_.size()) {
    throw ConfigError("force.table", "need at least two (t, g) pairs of equal length");
  }
  if (t_.front() != 0.0) throw ConfigError("force.table", "first node must be t = 0");
  for (std::size_t k = 0; k < t_.size(); ++k) {
    if (!std::isfinite(t_[k]) || !std::isfinite(g_[k])) throw ConfigError("force.table", "non-finite entry");
    if (g_[k] < 0.0) throw ConfigError("force.table", "g(t) must be nonnegative");
    if (k > 0 && !(t_[k] > t_[k - 1])) throw ConfigError("force.table", "times must be strictly increasing");
  }
  cum_.assign(t_.size(), 0.0);
  cum_sq_.assign(t_.size(), 0.0);
  for (std::size_t k = 1; k < t_.size(); ++k) {
    const double h = t_[k] - t_[k - 1];
    const double a = g_[k - 1], b = g_[k];
    cum_[k] = cum_[k - 1] + 0.5 * h * (a + b);
    cum_sq_[k] = cum_sq_[k - 1] + h * (a * a + a * b + b * b) / 3.0;
  }
}

double Tabulated::operator()(double t) const {
  if (t <= t_.front()) return g_.front();
  if (t >= t_.back()) return g_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - t_.begin());
  const double w = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
  return (1.0 - w) * g_[k - 1] + w * g_[k];
}

double Tabulated::primitive(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= t_.back()) {
    if (std::isinf(t)) return g_.back() > 0.0 ? kInf : cum_.back();
    return cum_.back() + (t - t_.back()) * g_.back();
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - t_.begin());
  const double a = g_[k - 1];
  const double b = (*this)(t);
  return cum_[k - 1] + 0.5 * (t - t_[k - 1]) * (a + b);
}

double Tabulated::primitive_sq(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= t_.back()) {
    if (std::isinf(t)) return g_.back() > 0.0 ? kInf : cum_sq_.back();
    return cum_sq_.back() + (t - t_.back()) * g_.back() * g_.back();
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - t_.begin());
  const double a = g_[k - 1];
  const double b = (*this)(t);
  return cum_sq_[k - 1] + (t - t_[k - 1]) * (a * a + a * b + b * b) / 3.0;
}

double Tabulated::integral(double t0, double t1) const { return primitive(t1) - primitive(t0); }

double Tabulated::integral_sq(double t0, double t1) const { return primitive_sq(t1) - primitive_sq(t0); }

const char* to_string(ForceRegime regime) noexcept {
  switch (regime) {
    case ForceRegime::TimeDependent: return "time-dependent";
    case ForceRegime::TimeIndependent: return "time-independent";
    case ForceRegime::Constant: return "constant";
  }
  return "unknown";
}

Force Force::time_dependent(TimeProfile g, CosineProfile space, double length) {
  space.validate(length, "force");
  std::visit(overloaded{
                 [](const ExpDecay& e) {
                   if (!(e.kappa > 0.0) || !std::isfinite(e.kappa))
                     throw ConfigError("force.kappa", "decay rate must be > 0");
                 },
                 [](const PowerDecay& p) {
                   if (!(p.beta > 1.0) || !std::isfinite(p.beta))
                     throw ConfigError("force.beta", "power decay needs beta > 1");
                 },
                 [](const Tabulated&) {},
             },
             g);
  return Force(ForceRegime::TimeDependent, {std::move(g)}, space, length);
}

Force Force::time_independent(CosineProfile space, double length) {
  space.validate(length, "force");
  return Force(ForceRegime::TimeIndependent, {}, space, length);
}

Force Force::constant(double f0, double length) {
  if (!std::isfinite(f0)) throw ConfigError("force.f0", "must be finite");
  if (f0 < 0.0) {
    throw Error(ErrorKind::DryOut, "force.f0 < 0: the film dries out in finite time");
  }
  return Force(ForceRegime::Constant, {}, CosineProfile{f0, 0.0, length}, length);
}

const TimeProfile* Force::time_profile() const noexcept { return g_.empty() ? nullptr : &g_.front(); }

bool Force::numeric() const noexcept {
  return !g_.empty() && std::holds_alternative<Tabulated>(g_.front());
}

std::string Force::describe() const {
  std::ostringstream os;
  switch (regime_) {
    case ForceRegime::Constant:
      os << "constant(f0=" << space_.A << ")";
      break;
    case ForceRegime::TimeIndependent:
      os << "static(" << space_.A << " + " << space_.B << " cos(pi x/" << space_.m << "))";
      break;
    case ForceRegime::TimeDependent:
      std::visit(overloaded{
                     [&](const ExpDecay& e) { os << "exp(-" << e.kappa << " t)"; },
                     [&](const PowerDecay& p) { os << "(1+t)^-" << p.beta; },
                     [&](const Tabulated& tab) { os << "tabulated[" << tab.times().size() << " nodes]"; },
                 },
                 g_.front());
      os << " * (" << space_.A << " + " << space_.B << " cos(pi x/" << space_.m << "))";
      break;
  }
  return os.str();
}

double Force::g(double t) const {
  if (g_.empty()) return 1.0;
  return std::visit(overloaded{
                        [&](const ExpDecay& e) { return std::exp(-e.kappa * t); },
                        [&](const PowerDecay& p) { return std::pow(1.0 + t, -p.beta); },
                        [&](const Tabulated& tab) { return tab(t); },
                    },
                    g_.front());
}

double Force::g_integral(double t0, double t1) const {
  if (t1 <= t0) return 0.0;
  if (g_.empty()) return t1 - t0;
  return std::visit(
      overloaded{
          [&](const ExpDecay& e) {
            // e^{-k t0} (1 - e^{-k (t1 - t0)}) keeps precision for short steps.
            if (std::isinf(t1)) return std::exp(-e.kappa * t0) / e.kappa;
            return -std::exp(-e.kappa * t0) * std::expm1(-e.kappa * (t1 - t0)) / e.kappa;
          },
          [&](const PowerDecay& p) {
            const double q = 1.0 - p.beta;
            if (std::isinf(t1)) return std::pow(1.0 + t0, q) / (p.beta - 1.0);
            // ((1+t0)^q - (1+t1)^q) / (beta - 1), written via expm1 of the log ratio.
            const double lr = std::log1p(t1) - std::log1p(t0);
            return -std::pow(1.0 + t0, q) * std::expm1(q * lr) / (p.beta - 1.0);
          },
          [&](const Tabulated& tab) { return tab.integral(t0, t1); },
      },
      g_.front());
}

double Force::g_sq_integral(double t0, double t1) const {
  if (t1 <= t0) return 0.0;
  if (g_.empty()) return t1 - t0;
  return std::visit(
      overloaded{
          [&](const ExpDecay& e) {
            const double k2 = 2.0 * e.kappa;
            if (std::isinf(t1)) return std::exp(-k2 * t0) / k2;
            return -std::exp(-k2 * t0) * std::expm1(-k2 * (t1 - t0)) / k2;
          },
          [&](const PowerDecay& p) {
            const double q = 1.0 - 2.0 * p.beta;
            if (std::isinf(t1)) return std::pow(1.0 + t0, q) / (-q);
            const double lr = std::log1p(t1) - std::log1p(t0);
            return -std::pow(1.0 + t0, q) * std::expm1(q * lr) / (-q);
          },
          [&](const Tabulated& tab) { return tab.integral_sq(t0, t1); },
      },
      g_.front());
}

double Force::eval(double t, double x) const { return g(t) * space_(x); }

double Force::grad_amplitude() const { return space_.slope_l2(length_); }

double Force::grad_l2_norm(double t) const { return std::abs(g(t)) * grad_amplitude(); }

double Force::mass_rate(double t) const { return g(t) * space_.A * length_; }

double Force::cumulative_mass(double t) const { return space_.A * length_ * g_integral(0.0, t); }

double Force::cumulative_grad_norm(double t0, double t1) const {
  const double amp = grad_amplitude();
  if (amp == 0.0 || t1 <= t0) return 0.0;
  return amp * g_integral(t0, t1);
}

double Force::cumulative_grad_norm_sq(double t0, double t1) const {
  const double amp = grad_amplitude();
  if (amp == 0.0 || t1 <= t0) return 0.0;
  return amp * amp * g_sq_integral(t0, t1);
}

HypothesisVerdict hypothesis_check(const Force& force, const CosineProfile& u0, double length) {
  HypothesisVerdict v;
  v.u0_slope = u0.slope_l2(length);
  v.u0_slope_limit = u0.A / std::sqrt(length);
  v.initial_slope = v.u0_slope < v.u0_slope_limit;
  v.u0_amplitude = u0.amplitude_condition(length);

  v.force_ratio_limit = std::pow(length, -1.5);
  const CosineProfile& s = force.space();
  // g(t) >= 0 multiplies both sides, so the per-time inequality reduces to
  // one on the spatial amplitudes.
  v.force_ratio = (s.A > 0.0) ? force.grad_amplitude() / (s.A * length) : 0.0;
  v.force_gradient = v.force_ratio <= v.force_ratio_limit;
  v.force_amplitude = (s.B == 0.0) || s.amplitude_condition(length);
  return v;
}

}  // namespace thinfilm
