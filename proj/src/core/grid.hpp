#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "core/geometry.hpp"

namespace erbm {

/// Uniform node grid over [x0, x0+nx*h] x [y0, y0+ny*h].
struct GridSpec {
  double x0 = 0.0, y0 = 0.0, h = 0.1;
  int nx = 10, ny = 10;  // cells; nodes are (nx+1) x (ny+1)
  double x1() const { return x0 + nx * h; }
  double y1() const { return y0 + ny * h; }
  int n_nodes() const { return (nx + 1) * (ny + 1); }
  int idx(int i, int j) const { return j * (nx + 1) + i; }
  Complex node(int i, int j) const { return Complex(x0 + i * h, y0 + j * h); }
};

/// Scalar field on a grid with bilinear off-node evaluation.
struct GridField {
  GridSpec g;
  std::vector<double> v;
  double eval(Complex z) const;
  /// Gradient via centered differences of the bilinear interpolant at
  /// spacing h (second-order away from boundaries).
  Complex grad(Complex z) const;
  bool inside(Complex z) const;
};

/// Classification callback supplied by the domain rasterizer. For a free
/// node and an axis direction, `cut` reports whether the segment from the
/// node to its neighbor crosses the boundary, the fractional arm length
/// theta in (0,1], and the Dirichlet value at the crossing.
struct BoundaryGeometry {
  // +1 fixed (value = Dirichlet data), 0 free, -1 outside-but-untouched
  std::function<int(Complex, double*)> classify;
  // dir: 0=+x, 1=-x, 2=+y, 3=-y. Returns true if the arm is cut.
  std::function<bool(Complex, int, double, double*, double*)> cut;
};

/// Multigrid Poisson solver: Laplace(u) = 0 with Dirichlet data, irregular
/// boundaries handled by Shortley-Weller stencils on every level.
class LaplaceSolver {
 public:
  LaplaceSolver(GridSpec spec, BoundaryGeometry geom);
  /// Solves to max-residual < tol (scaled by the data magnitude).
  GridField solve(double tol = 1e-10, int max_cycles = 200) const;

 private:
  struct Level;
  std::vector<std::shared_ptr<Level>> levels_;
};

/// Flux of the field through an axis-aligned rectangle contour
/// (counter-clockwise outward normal): integral of d(field)/dn |dz|.
double rect_flux(const GridField& f, double xa, double xb, double ya, double yb);

/// Flux through a circle of radius r centered at c.
double circle_flux(const GridField& f, Complex c, double r);

}  // namespace erbm
