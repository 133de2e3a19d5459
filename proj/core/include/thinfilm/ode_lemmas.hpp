#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace thinfilm {

/// Nonnegative forcing term for the comparison ODEs: 0, c e^{-rate t} or
/// c (1 + t)^{-rate} (rate > 1 for the algebraic family).
struct TimeFunction {
  enum class Kind { Zero, Exp, Power };
  Kind kind = Kind::Zero;
  double c = 0.0;
  double rate = 1.0;

  static TimeFunction zero() { return {}; }
  static TimeFunction exp(double c, double kappa) { return {Kind::Exp, c, kappa}; }
  static TimeFunction power(double c, double b) { return {Kind::Power, c, b}; }

  double operator()(double t) const;
  /// Integral over [t0, t1]; t1 may be +infinity.
  double integral(double t0, double t1) const;
  std::string describe() const;
};

/// One comparison-ODE instance. For k' + beta k^lambda <= f the coefficient
/// beta is positive; for X' <= alpha X^lambda + beta X^p it is negative.
struct OdeInstance {
  double beta = 1.0;
  double lambda = 1.0;
  double p = 2.0;
  double alpha = 1.0;  // source coefficient of the X-equation
  double k0 = 1.0;
  TimeFunction f;

  std::string describe() const;
};

enum class LemmaKind { Y1, Lem01, Inequ, Inequ11 };

const char* to_string(LemmaKind kind) noexcept;
LemmaKind parse_lemma(const std::string& name);

/// Upper bound for k' + beta k^lambda <= f, k(0) = k0.
double bound_y1(const OdeInstance& inst, double t);

/// M0 = k0 + int_0^inf f
double y1_m0(const OdeInstance& inst);

/// Solution of y' + beta y^lambda = 0 from (t0, y0), clamped at zero.
double lower_bound_lem01(const OdeInstance& inst, double t0, double y0, double t);

/// Upper bounds for X' <= alpha X^lambda + beta X^p, X(0) = k0, for p > 1
/// and p in (lambda, 1] respectively.
double bound_inequ(const OdeInstance& inst, double t);
double bound_inequ11(const OdeInstance& inst, double t);

/// Fixed point (alpha / -beta)^{1/(p - lambda)} of the X-equation.
double inequ_equilibrium(const OdeInstance& inst);

/// RK4 solution of the equality ODE sampled on t_grid (sorted). Y1/Lem01
/// integrate k' = -beta k^lambda + f, the inequ kinds X' = alpha X^lambda +
/// beta X^p. The initial value k0 is imposed at t_grid.front(). Throws BlowUp
/// above 1e12.
std::vector<double> ode_oracle(const OdeInstance& inst, LemmaKind kind, std::span<const double> t_grid);

struct LemmaSuiteResult {
  LemmaKind kind = LemmaKind::Y1;
  std::size_t instances = 0;
  std::size_t failures = 0;          // dominance violations
  std::size_t bound_failures = 0;    // y1 only: oracle > M0
  double worst_margin = 0.0;         // largest relative violation; <= 0 means none
  std::string worst_instance;
};

/// Random instance for suite `kind`, deterministic in (seed, index).
OdeInstance random_instance(LemmaKind kind, std::uint64_t seed, std::size_t index, double* t0 = nullptr);

/// Randomised dominance suite on a uniform grid of `points` over [0, t_end].
LemmaSuiteResult run_lemma_suite(LemmaKind kind, std::uint64_t seed, std::size_t instances, double tol = 1e-6,
                                 std::size_t points = 1000, double t_end = 20.0);

}  // namespace thinfilm
