#include "thinfilm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace thinfilm {

double energy(std::span<const double> u, const Grid& grid) {
  const double dx = grid.dx();
  double s = 0.0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    const double d = (u[k] - u[k - 1]) / dx;
    s += d * d;
  }
  return 0.5 * s * dx;
}

double ux_l2(std::span<const double> u, const Grid& grid) { return std::sqrt(2.0 * energy(u, grid)); }

Field face_heights(std::span<const double> u) {
  const std::size_t n = u.size();
  Field h(n + 1);
  h[0] = u[0];
  h[n] = u[n - 1];
  for (std::size_t k = 1; k < n; ++k) h[k] = 0.5 * (u[k - 1] + u[k]);
  return h;
}

namespace {

template <class Density>
double face_quadrature(std::span<const double> u, const Grid& grid, Density&& density) {
  const Field ext = extend_even(u);
  const Field d3 = face_third_derivative(ext, grid.dx());
  const Field h = face_heights(u);
  double s = 0.0;
  // Boundary faces carry u_xxx = 0 and contribute nothing.
  for (std::size_t k = 1; k < u.size(); ++k) s += density(h[k], d3[k]);
  return s * grid.dx();
}

}  // namespace

double dissipation(std::span<const double> u, const Grid& grid, const FluidModel& model) {
  return face_quadrature(u, grid, [&](double h, double s) { return model.dissipation_density(h, s); });
}

double unregularized_dissipation(std::span<const double> u, const Grid& grid, const FluidModel& model) {
  return face_quadrature(u, grid,
                         [&](double h, double s) { return model.unregularized_dissipation_density(h, s); });
}

double reference_value(const Force& force, double u0_mean, double t) {
  return u0_mean + force.cumulative_mass(t) / force.length();
}

double integrate_records(std::span<const SimRecord> records, double SimRecord::*column, double t0, double t1) {
  if (records.size() < 2) return 0.0;
  t0 = std::max(t0, records.front().t);
  t1 = std::min(t1, records.back().t);
  if (!(t1 > t0)) return 0.0;
  auto value_at = [&](std::size_t k, double t) {
    const SimRecord& a = records[k - 1];
    const SimRecord& b = records[k];
    const double w = (b.t > a.t) ? (t - a.t) / (b.t - a.t) : 1.0;
    return (1.0 - w) * (a.*column) + w * (b.*column);
  };
  double s = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double lo = std::max(t0, records[k - 1].t);
    const double hi = std::min(t1, records[k].t);
    if (hi <= lo) continue;
    s += 0.5 * (hi - lo) * (value_at(k, lo) + value_at(k, hi));
  }
  return s;
}

double dissipation_window(std::span<const SimRecord> records, double t) {
  return integrate_records(records, &SimRecord::dissipation, 0.5 * t, t);
}

SemilogFit semilog_fit(std::span<const SimRecord> records, double SimRecord::*column, double t_from, double t_to,
                       double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (const auto& r : records) {
    const double y = r.*column;
    if (r.t < t_from || r.t > t_to || !(y > floor)) continue;
    const double ly = std::log(y);
    sx += r.t;
    sy += ly;
    sxx += r.t * r.t;
    sxy += r.t * ly;
    syy += ly * ly;
    ++n;
  }
  SemilogFit fit;
  if (n < 3) return fit;
  const double dn = static_cast<double>(n);
  const double vx = sxx - sx * sx / dn;
  const double vy = syy - sy * sy / dn;
  const double cxy = sxy - sx * sy / dn;
  if (vx <= 0.0) return fit;
  fit.n = n;
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.r2 = (vy > 0.0) ? (cxy * cxy) / (vx * vy) : 1.0;
  return fit;
}

}  // namespace thinfilm
