#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace erbm {

using nlohmann::json;

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// ---- Hull ----

Hull Hull::vertical_slit(double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("vslit: height must be > 0");
  Hull a;
  a.kind = Kind::vslit;
  a.x = x;
  a.height = h;
  return a;
}

Hull Hull::half_disk(double x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("half_disk: radius must be > 0");
  Hull a;
  a.kind = Kind::half_disk;
  a.x = x;
  a.r = r;
  return a;
}

Hull Hull::polyline(std::vector<Complex> pts) {
  if (pts.size() < 2) throw std::invalid_argument("polyline hull: need >= 2 points");
  if (std::fabs(pts.front().imag()) > 1e-12)
    throw std::invalid_argument("polyline hull must start on the real axis");
  Hull a;
  a.kind = Kind::polyline;
  a.pts = std::move(pts);
  return a;
}

double Hull::radius() const {
  switch (kind) {
    case Kind::empty:
      return 0.0;
    case Kind::vslit:
      return std::hypot(x, height);
    case Kind::half_disk:
      return std::fabs(x) + r;
    case Kind::polyline: {
      double m = 0.0;
      for (Complex p : pts) m = std::max(m, std::abs(p));
      return m;
    }
  }
  return 0.0;
}

double dist_hull(const Hull& h, Complex z) {
  switch (h.kind) {
    case Hull::Kind::empty:
      return std::numeric_limits<double>::infinity();
    case Hull::Kind::vslit:
      return dist_point_segment(z, Complex(h.x, 0.0), Complex(h.x, h.height));
    case Hull::Kind::half_disk:
      return std::fabs(std::abs(z - Complex(h.x, 0.0)) - h.r);
    case Hull::Kind::polyline: {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < h.pts.size(); ++i)
        m = std::min(m, dist_point_segment(z, h.pts[i], h.pts[i + 1]));
      return m;
    }
  }
  return std::numeric_limits<double>::infinity();
}

bool on_hull(const Hull& h, Complex z, double tol) {
  if (h.kind == Hull::Kind::empty) return false;
  if (h.kind == Hull::Kind::half_disk)
    return std::abs(z - Complex(h.x, 0.0)) <= h.r + tol;
  return dist_hull(h, z) <= tol;
}

// ---- Domain ----

Domain Domain::chordal(std::vector<Slit> slits) {
  Domain d;
  d.kind = DomainKind::chordal_standard;
  for (const Slit& s : slits) d.holes.push_back(Hole::make(s));
  d.validate();
  return d;
}

Domain Domain::annulus(double r) {
  Domain d;
  d.kind = DomainKind::annulus;
  d.annulus_r = r;
  d.validate();
  return d;
}

Domain Domain::halfplane(std::vector<Hole> holes, Hull hull) {
  Domain d;
  d.kind = DomainKind::halfplane_holes;
  d.holes = std::move(holes);
  d.hull = std::move(hull);
  d.validate();
  return d;
}

namespace {

double hole_dist(const Hole& h, Complex z) {
  if (h.kind == Hole::Kind::slit)
    return dist_point_segment(z, Complex(h.slit.x1, h.slit.y),
                              Complex(h.slit.x2, h.slit.y));
  return std::fabs(std::abs(z - h.disk.c) - h.disk.r);
}

bool in_hole(const Hole& h, Complex z, double tol) {
  if (h.kind == Hole::Kind::slit) return hole_dist(h, z) <= tol;
  return std::abs(z - h.disk.c) <= h.disk.r + tol;
}

double hole_gap(const Hole& a, const Hole& b) {
  // Conservative separation estimate from boundary samples.
  auto samples = [](const Hole& h) {
    std::vector<Complex> out;
    if (h.kind == Hole::Kind::slit) {
      for (int k = 0; k <= 16; ++k) {
        double t = static_cast<double>(k) / 16.0;
        out.emplace_back(h.slit.x1 + t * (h.slit.x2 - h.slit.x1), h.slit.y);
      }
    } else {
      for (int k = 0; k < 16; ++k) {
        double a2 = 2.0 * M_PI * k / 16.0;
        out.push_back(h.disk.c + h.disk.r * Complex(std::cos(a2), std::sin(a2)));
      }
    }
    return out;
  };
  double m = std::numeric_limits<double>::infinity();
  for (Complex p : samples(a)) m = std::min(m, hole_dist(b, p));
  return m;
}

}  // namespace

double Domain::feature_radius() const {
  if (kind == DomainKind::annulus) return annulus_r;
  double m = 0.0;
  for (const Hole& h : holes) {
    if (h.kind == Hole::Kind::slit) {
      m = std::max(m, std::abs(Complex(h.slit.x1, h.slit.y)));
      m = std::max(m, std::abs(Complex(h.slit.x2, h.slit.y)));
    } else {
      m = std::max(m, std::abs(h.disk.c) + h.disk.r);
    }
  }
  if (!hull.empty()) m = std::max(m, hull.radius());
  return m;
}

double Domain::scale() const {
  if (kind == DomainKind::annulus) return annulus_r;
  return std::max(1.0, feature_radius());
}

void Domain::validate() const {
  if (kind == DomainKind::annulus) {
    if (!(annulus_r > 1.0))
      throw std::invalid_argument("annulus: outer radius must be > 1");
    if (!holes.empty())
      throw std::invalid_argument("annulus: holes are implicit (A1 = unit disk)");
    return;
  }
  for (const Hole& h : holes) {
    if (h.kind == Hole::Kind::slit) {
      if (!(h.slit.y > 0.0)) throw std::invalid_argument("slit: height must be > 0");
      if (!(h.slit.x1 < h.slit.x2))
        throw std::invalid_argument("slit: x1 < x2 required");
    } else {
      if (!(h.disk.r > 0.0)) throw std::invalid_argument("disk: radius must be > 0");
      if (!(h.disk.c.imag() > h.disk.r))
        throw std::invalid_argument("disk hole must lie strictly inside H");
    }
  }
  for (std::size_t i = 0; i < holes.size(); ++i) {
    // distance to A0 (real axis)
    double d0 = holes[i].kind == Hole::Kind::slit
                    ? holes[i].slit.y
                    : holes[i].disk.c.imag() - holes[i].disk.r;
    if (!(d0 > 0.0)) throw std::invalid_argument("hole touches the real axis");
    for (std::size_t j = i + 1; j < holes.size(); ++j)
      if (!(hole_gap(holes[i], holes[j]) > 0.0))
        throw std::invalid_argument("holes must be pairwise disjoint");
  }
  if (!hull.empty()) {
    if (kind == DomainKind::chordal_standard)
      throw std::invalid_argument("chordal_standard carries no hull");
    // hull must be disjoint from all holes
    std::vector<Complex> probe;
    if (hull.kind == Hull::Kind::vslit) {
      for (int k = 0; k <= 16; ++k)
        probe.emplace_back(hull.x, hull.height * k / 16.0);
    } else if (hull.kind == Hull::Kind::half_disk) {
      for (int k = 0; k <= 16; ++k) {
        double a = M_PI * k / 16.0;
        probe.push_back(Complex(hull.x, 0.0) + hull.r * Complex(std::cos(a), std::sin(a)));
      }
    } else {
      probe = hull.pts;
    }
    for (Complex p : probe)
      for (const Hole& h : holes)
        if (in_hole(h, p, 0.0))
          throw std::invalid_argument("hull intersects a hole");
  }
}

// ---- CurveSample ----

void CurveSample::validate() const {
  if (times.size() != points.size() || times.size() < 2)
    throw std::invalid_argument("curve: need matching times/points, >= 2 samples");
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("curve: times must be strictly increasing");
    if (std::abs(points[i + 1] - points[i]) == 0.0)
      throw std::invalid_argument("curve: consecutive points must be distinct");
  }
  for (Complex p : points)
    if (!is_finite(p)) throw std::invalid_argument("curve: non-finite point");
  // simple polyline: no intersection between non-adjacent segments
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    for (std::size_t j = i + 2; j + 1 < points.size(); ++j)
      if (segments_intersect(points[i], points[i + 1], points[j], points[j + 1]))
        throw std::invalid_argument("curve: polyline self-intersects");
}

Complex CurveSample::at(double t) const {
  if (t <= times.front()) return points.front();
  if (t >= times.back()) return points.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - times.begin());
  double u = (t - times[k - 1]) / (times[k] - times[k - 1]);
  return points[k - 1] + u * (points[k] - points[k - 1]);
}

// ---- predicates ----

double dist_point_segment(Complex z, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

namespace {
int orientation(Complex a, Complex b, Complex c) {
  double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
             (b.imag() - a.imag()) * (c.real() - a.real());
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}
bool on_seg(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() &&
         p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() &&
         p.imag() <= std::max(a.imag(), b.imag());
}
}  // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_seg(a, b, c)) return true;
  if (o2 == 0 && on_seg(a, b, d)) return true;
  if (o3 == 0 && on_seg(c, d, a)) return true;
  if (o4 == 0 && on_seg(c, d, b)) return true;
  return false;
}

bool contains(const Domain& d, Complex z) {
  if (!is_finite(z)) return false;
  if (d.kind == DomainKind::annulus) {
    double r = std::abs(z);
    return r > 1.0 && r < d.annulus_r;
  }
  if (!(z.imag() > 0.0)) return false;
  for (const Hole& h : d.holes)
    if (in_hole(h, z, 0.0)) return false;
  if (!d.hull.empty()) {
    if (d.hull.kind == Hull::Kind::half_disk) {
      if (std::abs(z - Complex(d.hull.x, 0.0)) <= d.hull.r) return false;
    } else if (dist_hull(d.hull, z) == 0.0) {
      return false;
    }
  }
  return true;
}

double dist_boundary(const Domain& d, Complex z) {
  if (!contains(d, z)) throw std::invalid_argument("dist_boundary: z not in domain");
  if (d.kind == DomainKind::annulus) {
    double r = std::abs(z);
    return std::min(r - 1.0, d.annulus_r - r);
  }
  double m = z.imag();  // real axis
  for (const Hole& h : d.holes) m = std::min(m, hole_dist(h, z));
  if (!d.hull.empty()) {
    double dh = d.hull.kind == Hull::Kind::half_disk
                    ? std::abs(z - Complex(d.hull.x, 0.0)) - d.hull.r
                    : dist_hull(d.hull, z);
    m = std::min(m, dh);
  }
  return m;
}

// ---- conformal primitives ----

namespace {

// Inverse Joukowski: w in C \ [-2,2]  ->  |zeta| > 1 with zeta + 1/zeta = w.
// Principal square roots of (w-2) and (w+2) put the cut on the segment.
Complex inverse_joukowski(Complex w) {
  Complex s = std::sqrt(w - 2.0) * std::sqrt(w + 2.0);
  Complex zeta = 0.5 * (w + s);
  if (std::abs(zeta) < 1.0) zeta = 0.5 * (w - s);
  return zeta;
}

inline Complex slit_affine(const Slit& s, Complex z) {
  return (z - s.midpoint()) * (2.0 / s.half_length());
}

inline Complex slit_affine_inv(const Slit& s, Complex w) {
  return s.midpoint() + w * (s.half_length() / 2.0);
}

}  // namespace

Complex slit_to_disk(const Slit& s, Complex z) {
  if (hole_dist(Hole::make(s), z) == 0.0)
    throw std::invalid_argument("slit_to_disk: z lies on the slit; use the boundary form");
  Complex w = slit_affine(s, z);
  return inverse_joukowski(w);
}

Complex slit_to_disk_boundary(const Slit& s, double x, SlitSide side) {
  if (x < s.x1 || x > s.x2)
    throw std::invalid_argument("slit_to_disk_boundary: x outside the slit");
  double u = (x - 0.5 * (s.x1 + s.x2)) * (2.0 / s.half_length());  // in [-2,2]
  double c = std::clamp(0.5 * u, -1.0, 1.0);
  double t = std::acos(c);  // in [0,pi]; zeta = e^{i t} has zeta+1/zeta = 2cos t
  return side == SlitSide::top ? std::polar(1.0, t) : std::polar(1.0, -t);
}

Complex disk_to_slit(const Slit& s, Complex zeta) {
  double r = std::abs(zeta);
  if (r < 1.0 - 1e-12)
    throw std::invalid_argument("disk_to_slit: |zeta| must be >= 1");
  Complex w = zeta + 1.0 / zeta;
  return slit_affine_inv(s, w);
}

double disk_to_slit_deriv_abs(const Slit& s, Complex zeta) {
  Complex dw = 1.0 - 1.0 / (zeta * zeta);
  return std::abs(dw) * (s.half_length() / 2.0);
}

Complex strip_to_annulus(double r, Complex z) {
  (void)r;  // total on the strip 0 < Im z < r; the formula is the same for all r
  return std::exp(Complex(0.0, 1.0) * z);
}

// ---- hole charts ----

Complex HoleChart::to_disk(Complex z) const {
  if (dom->kind == DomainKind::annulus) return z;  // A1 is already the unit disk
  const Hole& h = dom->holes[hole - 1];
  if (h.kind == Hole::Kind::slit) return slit_to_disk(h.slit, z);
  return (z - h.disk.c) / h.disk.r;
}

Complex HoleChart::from_disk(Complex zeta) const {
  if (dom->kind == DomainKind::annulus) return zeta;
  const Hole& h = dom->holes[hole - 1];
  if (h.kind == Hole::Kind::slit) return disk_to_slit(h.slit, zeta);
  return h.disk.c + h.disk.r * zeta;
}

double HoleChart::from_disk_deriv_abs(Complex zeta) const {
  if (dom->kind == DomainKind::annulus) return 1.0;
  const Hole& h = dom->holes[hole - 1];
  if (h.kind == Hole::Kind::slit) return disk_to_slit_deriv_abs(h.slit, zeta);
  return h.disk.r;
}

HoleChart hole_chart(const Domain& d, int hole) {
  if (hole < 1 || hole > d.n_holes())
    throw std::invalid_argument("hole_chart: hole index out of range");
  return HoleChart{&d, hole};
}

// ---- JSON ----

namespace {

json hull_to_jsonv(const Hull& h) {
  json j;
  switch (h.kind) {
    case Hull::Kind::empty:
      return nullptr;
    case Hull::Kind::vslit:
      j = {{"kind", "vslit"}, {"x", h.x}, {"height", h.height}};
      break;
    case Hull::Kind::half_disk:
      j = {{"kind", "halfdisk"}, {"x", h.x}, {"r", h.r}};
      break;
    case Hull::Kind::polyline: {
      json xs = json::array(), ys = json::array();
      for (Complex p : h.pts) {
        xs.push_back(p.real());
        ys.push_back(p.imag());
      }
      j = {{"kind", "polyline"}, {"x", xs}, {"y", ys}};
      break;
    }
  }
  return j;
}

Hull hull_from_jsonv(const json& j) {
  if (j.is_null()) return Hull::none();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "vslit")
    return Hull::vertical_slit(j.at("x").get<double>(), j.at("height").get<double>());
  if (kind == "halfdisk")
    return Hull::half_disk(j.at("x").get<double>(), j.at("r").get<double>());
  if (kind == "polyline") {
    auto xs = j.at("x").get<std::vector<double>>();
    auto ys = j.at("y").get<std::vector<double>>();
    if (xs.size() != ys.size()) throw std::invalid_argument("polyline: x/y size mismatch");
    std::vector<Complex> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], ys[i]);
    return Hull::polyline(std::move(pts));
  }
  throw std::invalid_argument("unknown hull kind: " + kind);
}

json hole_to_jsonv(const Hole& h) {
  if (h.kind == Hole::Kind::slit)
    return json{{"kind", "slit"}, {"y", h.slit.y}, {"x1", h.slit.x1}, {"x2", h.slit.x2}};
  return json{{"kind", "disk"},
              {"x", h.disk.c.real()},
              {"y", h.disk.c.imag()},
              {"r", h.disk.r}};
}

Hole hole_from_jsonv(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "slit")
    return Hole::make(Slit{j.at("y").get<double>(), j.at("x1").get<double>(),
                           j.at("x2").get<double>()});
  if (kind == "disk")
    return Hole::make(DiskHole{Complex(j.at("x").get<double>(), j.at("y").get<double>()),
                               j.at("r").get<double>()});
  throw std::invalid_argument("unknown hole kind: " + kind);
}

}  // namespace

std::string domain_to_json(const Domain& d) {
  json j;
  switch (d.kind) {
    case DomainKind::chordal_standard: {
      j["type"] = "chordal_standard";
      json slits = json::array();
      for (const Hole& h : d.holes)
        slits.push_back({{"y", h.slit.y}, {"x1", h.slit.x1}, {"x2", h.slit.x2}});
      j["slits"] = slits;
      break;
    }
    case DomainKind::annulus:
      j["type"] = "annulus";
      j["r"] = d.annulus_r;
      break;
    case DomainKind::halfplane_holes: {
      j["type"] = "halfplane_holes";
      json holes = json::array();
      for (const Hole& h : d.holes) holes.push_back(hole_to_jsonv(h));
      j["holes"] = holes;
      if (!d.hull.empty()) j["hull"] = hull_to_jsonv(d.hull);
      break;
    }
  }
  return j.dump();
}

Domain domain_from_json(const std::string& text) {
  json j = json::parse(text);
  std::string type = j.at("type").get<std::string>();
  if (type == "chordal_standard") {
    std::vector<Slit> slits;
    for (const json& s : j.at("slits"))
      slits.push_back(Slit{s.at("y").get<double>(), s.at("x1").get<double>(),
                           s.at("x2").get<double>()});
    return Domain::chordal(std::move(slits));
  }
  if (type == "annulus") return Domain::annulus(j.at("r").get<double>());
  if (type == "halfplane_holes") {
    std::vector<Hole> holes;
    for (const json& h : j.at("holes")) holes.push_back(hole_from_jsonv(h));
    Hull hull = j.contains("hull") ? hull_from_jsonv(j.at("hull")) : Hull::none();
    return Domain::halfplane(std::move(holes), std::move(hull));
  }
  throw std::invalid_argument("unknown domain type: " + type);
}

std::string curve_to_json(const CurveSample& c) {
  json t = json::array(), x = json::array(), y = json::array();
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    t.push_back(c.times[i]);
    x.push_back(c.points[i].real());
    y.push_back(c.points[i].imag());
  }
  return json{{"t", t}, {"x", x}, {"y", y}}.dump();
}

CurveSample curve_from_json(const std::string& text) {
  json j = json::parse(text);
  auto t = j.at("t").get<std::vector<double>>();
  auto x = j.at("x").get<std::vector<double>>();
  auto y = j.at("y").get<std::vector<double>>();
  if (t.size() != x.size() || t.size() != y.size())
    throw std::invalid_argument("curve: t/x/y size mismatch");
  CurveSample c;
  c.times = std::move(t);
  for (std::size_t i = 0; i < x.size(); ++i) c.points.emplace_back(x[i], y[i]);
  c.validate();
  return c;
}

}  // namespace erbm
