#include "thinfilm/model.hpp"

#include <cmath>
#include <sstream>

#include "thinfilm/error.hpp"

namespace thinfilm {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("model.eps_reg", "must lie in (0, 1)");
}

// (s^2 + eps^2)^((alpha-1)/2), with the Newtonian exponent short-circuited.
double regularized_power(double s, double alpha, double eps) {
  if (alpha == 1.0) return 1.0;
  return std::pow(s * s + eps * eps, 0.5 * (alpha - 1.0));
}

void require_positive_height(double u) {
  if (!(u > 0.0)) {
    std::ostringstream os;
    os << "film height " << u << " at a face is not positive";
    throw Error(ErrorKind::NonPositiveHeight, os.str());
  }
}

}  // namespace

double phi_eps(double s, double alpha, double eps_reg) {
  if (s == 0.0) return 0.0;
  if (alpha == 1.0) return s;
  return std::pow(s * s + eps_reg * eps_reg, 0.5 * (alpha - 1.0)) * s;
}

FluidModel FluidModel::power_law(double alpha, double a, double eps_reg) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("model.alpha", "power-law index must be > 0");
  if (!(a > 0.0)) throw ConfigError("model.a", "must be > 0");
  require_eps(eps_reg);
  return FluidModel(PowerLaw{alpha, a}, eps_reg);
}

FluidModel FluidModel::ellis(double alpha, double b, double c, double eps_reg) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ConfigError("model.alpha", "Ellis index must be >= 1");
  if (!(b > 0.0)) throw ConfigError("model.b", "must be > 0");
  if (!(c > 0.0)) throw ConfigError("model.c", "must be > 0");
  require_eps(eps_reg);
  return FluidModel(Ellis{alpha, b, c}, eps_reg);
}

double FluidModel::alpha() const noexcept {
  return std::visit([](const auto& l) { return l.alpha; }, law_);
}

double FluidModel::prefactor() const noexcept {
  if (const auto* p = std::get_if<PowerLaw>(&law_)) return p->a;
  return std::get<Ellis>(law_).b;
}

std::string FluidModel::describe() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<PowerLaw>(&law_)) {
    os << "power-law(alpha=" << p->alpha << ", a=" << p->a;
  } else {
    const auto& e = std::get<Ellis>(law_);
    os << "ellis(alpha=" << e.alpha << ", b=" << e.b << ", c=" << e.c;
  }
  os << ", eps=" << eps_ << ")";
  return os.str();
}

double FluidModel::mobility(double u_face, double uxxx) const {
  require_positive_height(u_face);
  if (const auto* p = std::get_if<PowerLaw>(&law_)) {
    return p->a * std::pow(u_face, p->alpha + 2.0) * regularized_power(uxxx, p->alpha, eps_);
  }
  const auto& e = std::get<Ellis>(law_);
  const double u3 = u_face * u_face * u_face;
  return e.b * u3 * (1.0 + e.c * regularized_power(u_face * uxxx, e.alpha, eps_));
}

double FluidModel::face_flux(double u_face, double uxxx) const {
  require_positive_height(u_face);
  if (uxxx == 0.0) return 0.0;
  return mobility(u_face, uxxx) * uxxx;
}

double FluidModel::dissipation_density(double u_face, double uxxx) const {
  return face_flux(u_face, uxxx) * uxxx;
}

double FluidModel::unregularized_dissipation_density(double u_face, double uxxx) const {
  require_positive_height(u_face);
  const double s = std::abs(uxxx);
  if (s == 0.0) return 0.0;
  if (const auto* p = std::get_if<PowerLaw>(&law_)) {
    return p->a * std::pow(u_face, p->alpha + 2.0) * std::pow(s, p->alpha + 1.0);
  }
  const auto& e = std::get<Ellis>(law_);
  const double u3 = u_face * u_face * u_face;
  return e.b * u3 * (1.0 + e.c * std::pow(u_face * s, e.alpha - 1.0)) * s * s;
}

double FluidModel::effective_stiffness(double u_max, double uxxx_max) const {
  if (const auto* p = std::get_if<PowerLaw>(&law_)) {
    return p->a * std::pow(u_max, p->alpha + 2.0) * std::max(p->alpha, 1.0) *
           regularized_power(uxxx_max, p->alpha, eps_);
  }
  const auto& e = std::get<Ellis>(law_);
  const double u3 = u_max * u_max * u_max;
  return e.b * u3 * (1.0 + e.c * e.alpha * regularized_power(u_max * uxxx_max, e.alpha, eps_));
}

}  // namespace thinfilm
