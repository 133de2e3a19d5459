#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thinfilm {

using Field = std::vector<double>;

/// Uniform cell-centred mesh on (0, L).
///
/// Cell i covers [i dx, (i+1) dx] and carries the value at x_i = (i + 1/2) dx.
/// Faces are numbered 0..N; face k sits between cells k-1 and k, so faces 0
/// and N are the domain boundary.
class Grid {
 public:
  static constexpr std::size_t kMinCells = 8;

  Grid(double length, std::size_t cells);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return cells_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx_; }

  std::vector<double> centers() const;

  /// Samples a callable f(x) at the cell centres.
  template <class F>
  Field sample(F&& f) const {
    Field out(cells_);
    for (std::size_t i = 0; i < cells_; ++i) out[i] = f(x(i));
    return out;
  }

 private:
  double length_;
  std::size_t cells_;
  double dx_;
};

/// Two ghost cells per side by mirror reflection:
/// [u1, u0, u0 .. u_{N-1}, u_{N-1}, u_{N-2}].
/// Even reflection makes every odd derivative vanish on the boundary, i.e.
/// u_x = u_xxx = 0 there.
Field extend_even(std::span<const double> u);

/// Third derivative at the N+1 faces of an extended field (size N+4).
/// Boundary faces are exactly zero.
Field face_third_derivative(std::span<const double> u_ext, double dx);

/// Forward differences (u_k - u_{k-1}) / dx at the N-1 interior faces.
Field face_gradient(std::span<const double> u, double dx);

/// sqrt(sum v_i^2 dx)
double discrete_l2(std::span<const double> v, double dx);

/// H1 distance of u from the spatially constant value `ref`.
/// Midpoint quadrature for the L2 part, interior face differences for the
/// gradient part.
double discrete_h1_error(std::span<const double> u, double ref, double dx);

}  // namespace thinfilm
