#pragma once

#include <limits>
#include <span>

#include "thinfilm/forcing.hpp"
#include "thinfilm/grid.hpp"
#include "thinfilm/model.hpp"

namespace thinfilm {

/// One row of the run history.
struct SimRecord {
  double t = 0.0;
  double mass = 0.0;           // sum u dx
  double mass_expected = 0.0;  // initial mass + cumulative_mass(t)
  double energy = 0.0;
  double dissipation = 0.0;      // regularised, consistent with the flux
  double dissipation_raw = 0.0;  // without regularisation
  double ux_l2 = 0.0;
  double reference = 0.0;  // mean(u0) + cumulative_mass(t) / L
  double h1_error = 0.0;
  double min_u = 0.0;
  double energy_residual = 0.0;  // E(t) + sum dt D - sum W - E(0)
  double envelope = std::numeric_limits<double>::quiet_NaN();
  bool hyp_ok = false;
};

/// 1/2 sum over interior faces of ((u_{i+1} - u_i)/dx)^2 dx
double energy(std::span<const double> u, const Grid& grid);

/// ||u_x||_2 with the same face differences; energy = ux_l2^2 / 2.
double ux_l2(std::span<const double> u, const Grid& grid);

/// Face quadrature of flux * u_xxx, i.e. the regularised dissipation.
double dissipation(std::span<const double> u, const Grid& grid, const FluidModel& model);

double unregularized_dissipation(std::span<const double> u, const Grid& grid, const FluidModel& model);

/// Face heights (u_{k-1} + u_k)/2 at the N+1 faces; boundary faces take the
/// adjacent cell value.
Field face_heights(std::span<const double> u);

double reference_value(const Force& force, double u0_mean, double t);

/// Trapezoid integral of a record column over [t0, t1], linearly interpolating
/// at the end points. Records must be sorted by t; the interval is clipped to
/// the recorded range.
double integrate_records(std::span<const SimRecord> records, double SimRecord::*column, double t0, double t1);

/// Integral of the recorded dissipation over [t/2, t].
double dissipation_window(std::span<const SimRecord> records, double t);

/// Least-squares fit of log(y) = c0 + slope t over records with t >= t_from
/// and y > 0. Returns slope and R^2; n == 0 when fewer than 3 points qualify.
struct SemilogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};
SemilogFit semilog_fit(std::span<const SimRecord> records, double SimRecord::*column, double t_from,
                       double t_to = std::numeric_limits<double>::infinity(), double floor = 0.0);

}  // namespace thinfilm
