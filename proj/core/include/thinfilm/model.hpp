#pragma once

#include <string>
#include <variant>

namespace thinfilm {

/// Regularised power nonlinearity (s^2 + eps^2)^((alpha-1)/2) * s.
/// Odd and increasing in s; reduces to |s|^(alpha-1) s at eps = 0.
double phi_eps(double s, double alpha, double eps_reg);

/// Ostwald-de Waele film: flux a u^(alpha+2) phi(u_xxx).
struct PowerLaw {
  double alpha = 1.0;
  double a = 1.0;
};

/// Ellis film: flux b u^3 (1 + c |u u_xxx|^(alpha-1)) u_xxx.
struct Ellis {
  double alpha = 2.0;
  double b = 1.0;
  double c = 1.0;
};

class FluidModel {
 public:
  static constexpr double kDefaultEps = 1e-8;

  static FluidModel power_law(double alpha, double a = 1.0, double eps_reg = kDefaultEps);
  static FluidModel ellis(double alpha, double b = 1.0, double c = 1.0, double eps_reg = kDefaultEps);

  bool is_ellis() const noexcept { return std::holds_alternative<Ellis>(law_); }
  double alpha() const noexcept;
  /// a for power-law, b for Ellis: the constant in front of the flux.
  double prefactor() const noexcept;
  double eps_reg() const noexcept { return eps_; }
  const std::variant<PowerLaw, Ellis>& law() const noexcept { return law_; }
  std::string describe() const;

  /// Flux through a face; throws NonPositiveHeight when u_face <= 0.
  double face_flux(double u_face, double uxxx) const;

  /// Flux divided by u_xxx, i.e. the frozen diffusion coefficient used by the
  /// linearly implicit step. Always positive for u_face > 0.
  double mobility(double u_face, double uxxx) const;

  /// face_flux * uxxx: the regularised dissipation integrand.
  double dissipation_density(double u_face, double uxxx) const;

  /// Dissipation integrand without regularisation.
  double unregularized_dissipation_density(double u_face, double uxxx) const;

  /// Linearised fourth-order coefficient bounding the explicit step.
  double effective_stiffness(double u_max, double uxxx_max) const;

 private:
  FluidModel(std::variant<PowerLaw, Ellis> law, double eps) : law_(law), eps_(eps) {}

  std::variant<PowerLaw, Ellis> law_;
  double eps_;
};

}  // namespace thinfilm
