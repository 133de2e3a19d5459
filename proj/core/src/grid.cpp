#include "thinfilm/grid.hpp"

#include <cmath>
#include <string>

#include "thinfilm/error.hpp"

namespace thinfilm {

Grid::Grid(double length, std::size_t cells) : length_(length), cells_(cells), dx_(0.0) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid.L", "domain length must be positive and finite");
  }
  if (cells < kMinCells) {
    throw ConfigError("grid.N", "need at least " + std::to_string(kMinCells) + " cells");
  }
  dx_ = length / static_cast<double>(cells);
}

std::vector<double> Grid::centers() const {
  std::vector<double> xs(cells_);
  for (std::size_t i = 0; i < cells_; ++i) xs[i] = x(i);
  return xs;
}

Field extend_even(std::span<const double> u) {
  const std::size_t n = u.size();
  if (n < 2) {
    throw Error(ErrorKind::Config, "extend_even: need at least 2 cells, got " + std::to_string(n));
  }
  Field ext(n + 4);
  ext[0] = u[1];
  ext[1] = u[0];
  for (std::size_t i = 0; i < n; ++i) ext[i + 2] = u[i];
  ext[n + 2] = u[n - 1];
  ext[n + 3] = u[n - 2];
  return ext;
}

Field face_third_derivative(std::span<const double> u_ext, double dx) {
  if (u_ext.size() < 6) {
    throw Error(ErrorKind::Config, "face_third_derivative: extended field too short");
  }
  const std::size_t n = u_ext.size() - 4;
  const double inv = 1.0 / (dx * dx * dx);
  Field out(n + 1, 0.0);
  // face k: (u_{k+1} - 3u_k + 3u_{k-1} - u_{k-2}) / dx^3, shifted by the 2 ghosts.
  for (std::size_t k = 1; k < n; ++k) {
    out[k] = (u_ext[k + 3] - 3.0 * u_ext[k + 2] + 3.0 * u_ext[k + 1] - u_ext[k]) * inv;
  }
  // The stencil is antisymmetric about the mirror plane, so out[0] and out[n]
  // vanish in exact arithmetic; pin them so the boundary flux is exactly zero.
  out[0] = 0.0;
  out[n] = 0.0;
  return out;
}

Field face_gradient(std::span<const double> u, double dx) {
  Field g(u.size() > 0 ? u.size() - 1 : 0);
  for (std::size_t k = 1; k < u.size(); ++k) g[k - 1] = (u[k] - u[k - 1]) / dx;
  return g;
}

double discrete_l2(std::span<const double> v, double dx) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s * dx);
}

double discrete_h1_error(std::span<const double> u, double ref, double dx) {
  double l2 = 0.0;
  for (double x : u) l2 += (x - ref) * (x - ref);
  double grad = 0.0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    const double d = (u[k] - u[k - 1]) / dx;
    grad += d * d;
  }
  return std::sqrt((l2 + grad) * dx);
}

}  // namespace thinfilm
