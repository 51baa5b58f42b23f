#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "core/estimate.hpp"
#include "core/geometry.hpp"
#include "core/grid.hpp"
#include "core/rng.hpp"

namespace erbm {

// ---- exact kernels ----

/// Poisson kernel of the upper half-plane at boundary point x.
double pk_halfplane(Complex z, double x);
/// lim y->inf of y * pk_halfplane(x + iy, x) = 1/pi, independent of x.
double pk_halfplane_infinity(double x);
/// Poisson kernel of the strip 0 < Im z < r at boundary point 0.
double pk_halfstrip(double r, Complex z);
/// Green's function of the upper half-plane (occupation-density scaling).
double green_halfplane(Complex z, Complex w);
/// Green's function of the disk of radius r at the origin: (log r - log|z|)/pi.
double green_disk(double r, Complex z);

// ---- sampling ----

struct StepPolicy {
  double eps_hit = 1e-4;   // boundary capture distance
  double eps_wos = 2e-3;   // walk-on-spheres shrink floor
  double dt_euler = 2.5e-7;  // near-boundary diffusion step
  std::uint64_t max_steps = 100000000ULL;
  void validate() const;
  static StepPolicy for_domain(const Domain& d);
};

struct ExitSample {
  Complex point;
  int boundary_id = 0;  // 0 = A0, i >= 1 = hole index
  bool has_side = false;
  SlitSide side = SlitSide::top;
  std::uint64_t steps = 0;
};

/// Sparse occupation-time accumulator over the cells of a grid.
struct OccupationAccum {
  GridSpec cells;  // cell (i,j) covers [x0+ih, x0+(i+1)h] x [...]
  std::vector<double> time;    // cell-indexed, size nx*ny
  std::vector<double> time_sq; // per-path second moments, filled by callers
  OccupationAccum() = default;
  explicit OccupationAccum(const GridSpec& c)
      : cells(c), time(static_cast<std::size_t>(c.nx) * c.ny, 0.0) {}
  void add(Complex z, double w);
  void merge(const OccupationAccum& o);
};

/// Brownian motion killed on the full boundary of the domain (real axis,
/// hull, every hole). Walk-on-spheres while the boundary is far, Gaussian
/// Euler steps with Brownian-bridge crossing tests near it. Construct once,
/// run many paths.
class ExitSampler {
 public:
  explicit ExitSampler(const Domain& d);
  ExitSample run(Complex z0, const StepPolicy& p, RngStream& rng,
                 OccupationAccum* occ = nullptr) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

ExitSample sample_bm_exit(const Domain& d, Complex z0, const StepPolicy& p,
                          RngStream& rng, OccupationAccum* occ = nullptr);

/// Monte Carlo estimate of h_i(z) = P^z(BM exits D on hole i).
KernelEstimate harmonic_measure_hole(const Domain& d, Complex z, int hole,
                                     RngStream rng, std::size_t n,
                                     const StepPolicy& p, int jobs = 1);

// ---- deterministic backend ----

struct GridBoundaryData {
  std::function<double(double)> on_real;
  std::function<double(Complex)> on_hull;
  std::vector<std::function<double(Complex)>> on_hole;  // one per hole
  std::function<double(Complex)> far_base;  // box top/sides (and corners)
  bool auto_dipole = false;  // add fitted c * Im z / |z|^2 far-field term
  static GridBoundaryData zero(const Domain& d);
};

struct GridSolution {
  GridField field;
  double dipole = 0.0;  // fitted far-field coefficient (auto_dipole only)
};

/// 5-point (Shortley-Weller near boundaries) Laplace solve on the domain
/// truncated to `box`. Slits and hulls cut grid arms exactly; disks and
/// circles are resolved by fractional arms as well.
GridSolution grid_harmonic_ex(const Domain& d, const GridBoundaryData& data,
                              const GridSpec& box, double tol = 1e-10);
GridField grid_harmonic(const Domain& d, const GridBoundaryData& data,
                        const GridSpec& box, double tol = 1e-10);

/// Default box for half-plane domains: [-pad*S, pad*S] x [0, pad*S] snapped
/// to the mesh h, where S is the domain feature scale.
GridSpec default_box(const Domain& d, double h, double pad = 4.0);

}  // namespace erbm
