#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace erbm {

using Complex = std::complex<double>;

bool is_finite(Complex z);

/// Horizontal slit [x1 + iy, x2 + iy]; a two-sided boundary component.
struct Slit {
  double y = 0.0;    // height, > 0
  double x1 = 0.0;   // left endpoint
  double x2 = 0.0;   // right endpoint, > x1
  Complex midpoint() const { return Complex(0.5 * (x1 + x2), y); }
  double half_length() const { return 0.5 * (x2 - x1); }
};

enum class SlitSide { top, bottom };

/// Closed disk hole centered at c (in the open upper half-plane).
struct DiskHole {
  Complex c;
  double r = 0.0;
};

struct Hole {
  enum class Kind { slit, disk } kind = Kind::slit;
  Slit slit;
  DiskHole disk;
  static Hole make(const Slit& s) { return Hole{Kind::slit, s, {}}; }
  static Hole make(const DiskHole& d) { return Hole{Kind::disk, {}, d}; }
};

/// Compact H-hull attached to the killing boundary. Polyline hulls are
/// simple curves starting on the real axis.
struct Hull {
  enum class Kind { empty, vslit, half_disk, polyline } kind = Kind::empty;
  double x = 0.0;       // base (vslit, half_disk)
  double height = 0.0;  // vslit
  double r = 0.0;       // half_disk
  std::vector<Complex> pts;  // polyline
  double radius() const;     // rad(A) = inf r with A inside r*D
  bool empty() const { return kind == Kind::empty; }
  static Hull none() { return Hull{}; }
  static Hull vertical_slit(double x, double h);
  static Hull half_disk(double x, double r);
  static Hull polyline(std::vector<Complex> pts);
};

enum class DomainKind { chordal_standard, annulus, halfplane_holes };

/// Finitely connected planar domain. Three kinds:
///  - chordal_standard: upper half-plane minus horizontal slits,
///  - annulus: 1 < |z| < r, killed on |z| = r, hole A1 = closed unit disk,
///  - halfplane_holes: upper half-plane minus slit/disk holes, with an
///    optional compact hull attached to the killing boundary A0.
struct Domain {
  DomainKind kind = DomainKind::chordal_standard;
  std::vector<Hole> holes;
  double annulus_r = 0.0;
  Hull hull;  // halfplane_holes only

  int n_holes() const {
    return kind == DomainKind::annulus ? 1 : static_cast<int>(holes.size());
  }
  bool half_plane_like() const { return kind != DomainKind::annulus; }
  /// Radius of the smallest origin-centered half-disk containing all holes
  /// and the hull (half-plane kinds).
  double feature_radius() const;
  /// Characteristic length used to scale numerical policies.
  double scale() const;

  void validate() const;  // throws std::invalid_argument on bad data

  static Domain upper_half_plane() {
    Domain d;
    d.kind = DomainKind::halfplane_holes;
    return d;
  }
  static Domain chordal(std::vector<Slit> slits);
  static Domain annulus(double r);
  static Domain halfplane(std::vector<Hole> holes, Hull hull = Hull::none());
};

/// Polyline sample of a simple curve with gamma(0) on the real axis.
struct CurveSample {
  std::vector<double> times;
  std::vector<Complex> points;
  void validate() const;  // monotone times, distinct points, simple polyline
  Complex at(double t) const;  // linear interpolation
};

// ---- region predicates ----

bool contains(const Domain& d, Complex z);
double dist_boundary(const Domain& d, Complex z);  // throws if z not in d

// Distance helpers.
double dist_point_segment(Complex z, Complex a, Complex b);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
double dist_hull(const Hull& h, Complex z);
bool on_hull(const Hull& h, Complex z, double tol);

// ---- explicit conformal primitives ----

/// Conformal bijection (C minus slit) -> (C minus closed unit disk) fixing
/// infinity: affine map of the slit onto [-2,2] followed by the inverse
/// Joukowski branch with modulus > 1. Throws if z lies on the slit.
Complex slit_to_disk(const Slit& s, Complex z);
/// Two-sided boundary values: x in [x1,x2] goes to the upper (top side) or
/// lower (bottom side) unit semicircle.
Complex slit_to_disk_boundary(const Slit& s, double x, SlitSide side);
/// Inverse transport: |zeta| > 1 required (throws otherwise); boundary
/// |zeta| = 1 is accepted and lands on the slit.
Complex disk_to_slit(const Slit& s, Complex zeta);
/// |d(disk_to_slit)/d zeta|.
double disk_to_slit_deriv_abs(const Slit& s, Complex zeta);

/// e^{iz}: universal cover of the annulus e^{-r} < |w| < 1 by the strip
/// 0 < Im z < r.
Complex strip_to_annulus(double r, Complex z);

/// Transport of hole i onto the exterior of the closed unit disk
/// (slit_to_disk for slits, affine for disks).
struct HoleChart {
  const Domain* dom = nullptr;
  int hole = 0;  // 1-based
  Complex to_disk(Complex z) const;
  Complex from_disk(Complex zeta) const;
  double from_disk_deriv_abs(Complex zeta) const;
};
HoleChart hole_chart(const Domain& d, int hole);

// ---- JSON (schema per the external interface) ----

std::string domain_to_json(const Domain& d);
Domain domain_from_json(const std::string& json_text);
std::string curve_to_json(const CurveSample& c);
CurveSample curve_from_json(const std::string& json_text);

}  // namespace erbm
