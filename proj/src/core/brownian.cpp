#include "core/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"
#include "core/stats.hpp"

namespace erbm {

// ---- exact kernels ----

double pk_halfplane(Complex z, double x) {
  if (!(z.imag() > 0.0)) throw std::domain_error("pk_halfplane: Im z must be > 0");
  double dx = z.real() - x;
  return z.imag() / (M_PI * (dx * dx + z.imag() * z.imag()));
}

double pk_halfplane_infinity(double) { return 1.0 / M_PI; }

double pk_halfstrip(double r, Complex z) {
  if (!(r > 0.0)) throw std::domain_error("pk_halfstrip: r must be > 0");
  if (!(z.imag() > 0.0 && z.imag() < r))
    throw std::domain_error("pk_halfstrip: 0 < Im z < r required");
  double sy = std::sin(M_PI * z.imag() / r);
  double cx = std::cosh(M_PI * z.real() / r);
  double cy = std::cos(M_PI * z.imag() / r);
  return sy / (2.0 * r * (cx - cy));
}

double green_halfplane(Complex z, Complex w) {
  if (!(z.imag() > 0.0 && w.imag() > 0.0))
    throw std::domain_error("green_halfplane: points must lie in H");
  if (z == w) throw std::domain_error("green_halfplane: z == w singularity");
  double num = std::norm(z - std::conj(w));
  double den = std::norm(z - w);
  return std::log(num / den) / (4.0 * M_PI);
}

double green_disk(double r, Complex z) {
  if (!(r > 0.0)) throw std::domain_error("green_disk: r must be > 0");
  double a = std::abs(z);
  if (a == 0.0) throw std::domain_error("green_disk: singularity at 0");
  if (a >= r) throw std::domain_error("green_disk: |z| < r required");
  return (std::log(r) - std::log(a)) / M_PI;
}

// ---- policy ----

void StepPolicy::validate() const {
  if (!(eps_hit > 0.0 && eps_wos > 0.0 && dt_euler > 0.0))
    throw std::invalid_argument("StepPolicy: all lengths must be > 0");
  if (!(eps_hit < eps_wos))
    throw std::invalid_argument("StepPolicy: eps_hit < eps_wos required");
}

StepPolicy StepPolicy::for_domain(const Domain& d) {
  double s = d.scale();
  StepPolicy p;
  p.eps_hit = 1e-4 * s;
  p.eps_wos = 2e-3 * s;
  double sigma = 5e-4 * s;
  p.dt_euler = sigma * sigma;
  return p;
}

// ---- occupation ----

void OccupationAccum::add(Complex z, double w) {
  int i = static_cast<int>(std::floor((z.real() - cells.x0) / cells.h));
  int j = static_cast<int>(std::floor((z.imag() - cells.y0) / cells.h));
  if (i < 0 || i >= cells.nx || j < 0 || j >= cells.ny) return;
  time[static_cast<std::size_t>(j) * cells.nx + i] += w;
}

void OccupationAccum::merge(const OccupationAccum& o) {
  if (time.size() != o.time.size()) throw std::logic_error("occupation merge mismatch");
  for (std::size_t k = 0; k < time.size(); ++k) time[k] += o.time[k];
}

// ---- sampler geometry ----

namespace {

struct SegFeature {
  Complex a, b;       // endpoints
  Complex tang, nrm;  // unit tangent / normal
  double len = 0.0;
  int boundary_id = 0;
  bool slit = false;  // two-sided horizontal slit
};

struct CircFeature {
  Complex c;
  double r = 0.0;
  int boundary_id = 0;
  bool outer = false;  // annulus killing circle (approached from inside)
};

struct SamplerGeom {
  bool annulus = false;
  double R = 0.0;
  bool real_axis = false;
  std::vector<SegFeature> segs;
  std::vector<CircFeature> circles;

  double dist(Complex z) const {
    double m = std::numeric_limits<double>::infinity();
    if (annulus) {
      double a = std::abs(z);
      return std::min(a - 1.0, R - a);
    }
    if (real_axis) m = z.imag();
    for (const auto& s : segs) m = std::min(m, dist_point_segment(z, s.a, s.b));
    for (const auto& c : circles) m = std::min(m, std::fabs(std::abs(z - c.c) - c.r));
    return m;
  }
};

SegFeature make_seg(Complex a, Complex b, int id, bool slit) {
  SegFeature s;
  s.a = a;
  s.b = b;
  s.len = std::abs(b - a);
  s.tang = (b - a) / s.len;
  s.nrm = Complex(-s.tang.imag(), s.tang.real());
  s.boundary_id = id;
  s.slit = slit;
  return s;
}

SamplerGeom build_geom(const Domain& d) {
  SamplerGeom g;
  if (d.kind == DomainKind::annulus) {
    g.annulus = true;
    g.R = d.annulus_r;
    g.circles.push_back({Complex(0, 0), 1.0, 1, false});
    g.circles.push_back({Complex(0, 0), d.annulus_r, 0, true});
    return g;
  }
  g.real_axis = true;
  int id = 1;
  for (const Hole& h : d.holes) {
    if (h.kind == Hole::Kind::slit)
      g.segs.push_back(make_seg(Complex(h.slit.x1, h.slit.y),
                                Complex(h.slit.x2, h.slit.y), id, true));
    else
      g.circles.push_back({h.disk.c, h.disk.r, id, false});
    ++id;
  }
  switch (d.hull.kind) {
    case Hull::Kind::empty:
      break;
    case Hull::Kind::vslit:
      g.segs.push_back(make_seg(Complex(d.hull.x, 0.0),
                                Complex(d.hull.x, d.hull.height), 0, false));
      break;
    case Hull::Kind::half_disk:
      g.circles.push_back({Complex(d.hull.x, 0.0), d.hull.r, 0, false});
      break;
    case Hull::Kind::polyline:
      for (std::size_t i = 0; i + 1 < d.hull.pts.size(); ++i)
        g.segs.push_back(make_seg(d.hull.pts[i], d.hull.pts[i + 1], 0, false));
      break;
  }
  return g;
}

struct Crossing {
  bool hit = false;
  double t = 2.0;  // parameter along the step, in [0,1]
  Complex point;
  int boundary_id = 0;
  bool has_side = false;
  SlitSide side = SlitSide::top;
};

void consider(Crossing& best, double t, Complex p, int id, bool has_side,
              SlitSide side) {
  if (t < best.t) best = Crossing{true, t, p, id, has_side, side};
}

// Deterministic crossing of the straight step z0 -> z1 with a feature.
void cross_seg(const SegFeature& s, Complex z0, Complex z1, Crossing& best) {
  auto dot = [](Complex a, Complex b) {
    return a.real() * b.real() + a.imag() * b.imag();
  };
  double d0 = dot(z0 - s.a, s.nrm);
  double d1 = dot(z1 - s.a, s.nrm);
  if ((d0 > 0) == (d1 > 0)) return;
  double t = d0 / (d0 - d1);
  Complex p = z0 + t * (z1 - z0);
  double sc = dot(p - s.a, s.tang);
  if (sc < 0.0 || sc > s.len) return;
  consider(best, t, s.a + sc * s.tang, s.boundary_id, s.slit,
           d0 > 0 ? SlitSide::top : SlitSide::bottom);
}

void cross_circle(const CircFeature& c, Complex z0, Complex z1, Crossing& best) {
  double r0 = std::abs(z0 - c.c);
  double r1 = std::abs(z1 - c.c);
  bool in0 = r0 < c.r, in1 = r1 < c.r;
  if (in0 == in1) return;
  // quadratic |z0 + t dz - c|^2 = r^2, smallest t in [0,1]
  Complex dz = z1 - z0, w = z0 - c.c;
  double A = std::norm(dz);
  double B = 2.0 * (w.real() * dz.real() + w.imag() * dz.imag());
  double C = std::norm(w) - c.r * c.r;
  double disc = B * B - 4 * A * C;
  double t;
  if (disc <= 0.0 || A == 0.0) {
    t = 0.5;
  } else {
    double sq = std::sqrt(disc);
    double t1 = (-B - sq) / (2 * A), t2 = (-B + sq) / (2 * A);
    t = (t1 >= 0.0 && t1 <= 1.0) ? t1 : t2;
    t = std::clamp(t, 0.0, 1.0);
  }
  Complex p = z0 + t * dz;
  p = c.c + c.r * (p - c.c) / std::abs(p - c.c);
  consider(best, t, p, c.boundary_id, false, SlitSide::top);
}

// Brownian-bridge crossing of a nearby feature when neither endpoint crossed.
// d0, d1 > 0 are signed-distance magnitudes to the (locally straight)
// feature; the bridge crosses with probability exp(-2 d0 d1 / dt).
bool bridge_fires(double d0, double d1, double dt, RngStream& rng) {
  double p = std::exp(-2.0 * d0 * d1 / dt);
  return rng.uniform() < p;
}

}  // namespace

struct ExitSampler::Impl {
  Domain dom;
  SamplerGeom geom;
};

ExitSampler::ExitSampler(const Domain& d) {
  auto impl = std::make_shared<Impl>();
  impl->dom = d;
  impl->geom = build_geom(impl->dom);
  impl_ = impl;
}

ExitSample ExitSampler::run(Complex z0, const StepPolicy& pol, RngStream& rng,
                            OccupationAccum* occ) const {
  pol.validate();
  if (!contains(impl_->dom, z0))
    throw std::invalid_argument("sample_bm_exit: start not in domain");
  const SamplerGeom& geom = impl_->geom;
  Complex z = z0;
  double sigma = std::sqrt(pol.dt_euler);
  double bridge_band = 4.0 * sigma;
  std::uint64_t steps = 0;

  auto snap = [&](Complex zz) -> ExitSample {
    // capture to the nearest boundary feature
    ExitSample out;
    out.steps = steps;
    double best = std::numeric_limits<double>::infinity();
    if (geom.annulus) {
      double a = std::abs(zz);
      if (a - 1.0 < geom.R - a) {
        out.point = zz / a;
        out.boundary_id = 1;
      } else {
        out.point = zz * (geom.R / a);
        out.boundary_id = 0;
      }
      return out;
    }
    if (geom.real_axis) {
      best = zz.imag();
      out.point = Complex(zz.real(), 0.0);
      out.boundary_id = 0;
    }
    for (const auto& s : geom.segs) {
      double dd = dist_point_segment(zz, s.a, s.b);
      if (dd < best) {
        best = dd;
        auto dot = [](Complex a, Complex b) {
          return a.real() * b.real() + a.imag() * b.imag();
        };
        double sc = std::clamp(dot(zz - s.a, s.tang), 0.0, s.len);
        out.point = s.a + sc * s.tang;
        out.boundary_id = s.boundary_id;
        out.has_side = s.slit;
        out.side = dot(zz - s.a, s.nrm) > 0 ? SlitSide::top : SlitSide::bottom;
      }
    }
    for (const auto& c : geom.circles) {
      double dd = std::fabs(std::abs(zz - c.c) - c.r);
      if (dd < best) {
        best = dd;
        out.point = c.c + c.r * (zz - c.c) / std::abs(zz - c.c);
        out.boundary_id = c.boundary_id;
        out.has_side = false;
      }
    }
    return out;
  };

  for (;;) {
    if (steps >= pol.max_steps)
      throw std::runtime_error("sample_bm_exit: step budget exhausted");
    double dist = geom.dist(z);
    if (dist <= pol.eps_hit) return snap(z);
    if (dist > pol.eps_wos) {
      // walk on spheres; expected occupation of the ball is known exactly
      ++steps;
      if (occ) {
        double rr = dist * std::sqrt(rng.uniform() * rng.uniform());
        double aa = rng.uniform(0.0, 2.0 * M_PI);
        occ->add(z + rr * std::polar(1.0, aa), dist * dist / 2.0);
      }
      z += dist * std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      continue;
    }
    // Euler step with crossing / bridge detection
    ++steps;
    Complex z1 = z + sigma * Complex(rng.gaussian(), rng.gaussian());
    Crossing best;
    if (geom.annulus || !geom.real_axis) {
      // circles handled below
    } else if (z1.imag() <= 0.0) {
      double t = z.imag() / (z.imag() - z1.imag());
      Complex p(z.real() + t * (z1.real() - z.real()), 0.0);
      consider(best, t, p, 0, false, SlitSide::top);
    }
    for (const auto& s : geom.segs) cross_seg(s, z, z1, best);
    for (const auto& c : geom.circles) cross_circle(c, z, z1, best);
    if (best.hit) {
      if (occ) occ->add(0.5 * (z + best.point), pol.dt_euler * best.t);
      ExitSample out;
      out.point = best.point;
      out.boundary_id = best.boundary_id;
      out.has_side = best.has_side;
      out.side = best.side;
      out.steps = steps;
      return out;
    }
    // no endpoint crossing: bridge tests against close features
    if (geom.real_axis && z.imag() < bridge_band && z1.imag() < bridge_band) {
      if (bridge_fires(z.imag(), z1.imag(), pol.dt_euler, rng)) {
        double t = z.imag() / (z.imag() + z1.imag());
        Complex p(z.real() + t * (z1.real() - z.real()), 0.0);
        if (occ) occ->add(0.5 * (z + p), pol.dt_euler * t);
        return ExitSample{p, 0, false, SlitSide::top, steps};
      }
    }
    bool bridged = false;
    ExitSample bout;
    for (const auto& s : geom.segs) {
      auto dot = [](Complex a, Complex b) {
        return a.real() * b.real() + a.imag() * b.imag();
      };
      double d0 = dot(z - s.a, s.nrm), d1 = dot(z1 - s.a, s.nrm);
      double a0 = std::fabs(d0), a1 = std::fabs(d1);
      if (a0 >= bridge_band || a1 >= bridge_band) continue;
      double t = a0 / (a0 + a1);
      Complex p = z + t * (z1 - z);
      double sc = dot(p - s.a, s.tang);
      if (sc < 0.0 || sc > s.len) continue;
      if (bridge_fires(a0, a1, pol.dt_euler, rng)) {
        bout.point = s.a + sc * s.tang;
        bout.boundary_id = s.boundary_id;
        bout.has_side = s.slit;
        bout.side = d0 > 0 ? SlitSide::top : SlitSide::bottom;
        bout.steps = steps;
        bridged = true;
        break;
      }
    }
    if (!bridged) {
      for (const auto& c : geom.circles) {
        double d0 = std::abs(z - c.c) - c.r;
        double d1 = std::abs(z1 - c.c) - c.r;
        if (c.outer) {
          d0 = -d0;
          d1 = -d1;
        }
        if (d0 <= 0 || d1 <= 0) continue;  // endpoint crossings handled above
        if (d0 >= bridge_band || d1 >= bridge_band) continue;
        if (bridge_fires(d0, d1, pol.dt_euler, rng)) {
          double t = d0 / (d0 + d1);
          Complex p = z + t * (z1 - z);
          bout.point = c.c + c.r * (p - c.c) / std::abs(p - c.c);
          bout.boundary_id = c.boundary_id;
          bout.steps = steps;
          bridged = true;
          break;
        }
      }
    }
    if (bridged) {
      if (occ) occ->add(0.5 * (z + bout.point), 0.5 * pol.dt_euler);
      return bout;
    }
    if (occ) occ->add(0.5 * (z + z1), pol.dt_euler);
    z = z1;
  }
}

ExitSample sample_bm_exit(const Domain& d, Complex z0, const StepPolicy& p,
                          RngStream& rng, OccupationAccum* occ) {
  return ExitSampler(d).run(z0, p, rng, occ);
}

KernelEstimate harmonic_measure_hole(const Domain& d, Complex z, int hole,
                                     RngStream rng, std::size_t n,
                                     const StepPolicy& p, int jobs) {
  if (hole < 1 || hole > d.n_holes())
    throw std::invalid_argument("harmonic_measure_hole: bad hole index");
  struct Acc {
    std::size_t hits = 0;
  };
  ExitSampler sampler(d);
  Acc total = chunked_reduce<Acc>(
      n, 4096, jobs, Acc{},
      [&](std::size_t b, std::size_t e, std::size_t, Acc& a) {
        for (std::size_t i = b; i < e; ++i) {
          RngStream r = rng.derive(i);
          ExitSample s = sampler.run(z, p, r);
          if (s.boundary_id == hole) ++a.hits;
        }
      },
      [](Acc& t, const Acc& a) { t.hits += a.hits; });
  double ph = static_cast<double>(total.hits) / static_cast<double>(n);
  KernelEstimate est;
  est.value = ph;
  est.stderr_ = std::sqrt(std::max(ph * (1.0 - ph), 0.0) / static_cast<double>(n));
  est.method = Backend::mc;
  est.n_samples = n;
  return est;
}

// ---- deterministic grid backend ----

GridBoundaryData GridBoundaryData::zero(const Domain& d) {
  GridBoundaryData b;
  b.on_real = [](double) { return 0.0; };
  b.on_hull = [](Complex) { return 0.0; };
  b.on_hole.assign(d.n_holes(), [](Complex) { return 0.0; });
  b.far_base = [](Complex) { return 0.0; };
  return b;
}

namespace {

struct RasterFeature {
  enum class Kind { seg, circle_hole, circle_kill } kind = Kind::seg;
  Complex a, b;  // seg
  Complex c;
  double r = 0.0;
  int data_id = 0;  // -1 hull, -2 real axis, >=0 hole index (0-based)
};

struct Rasterizer {
  const Domain* dom;
  const GridBoundaryData* data;
  GridSpec box;
  std::vector<RasterFeature> feats;
  double tol_on;

  double value_at(int data_id, Complex p) const {
    if (data_id == -2) return data->on_real(p.real());
    if (data_id == -1) return data->on_hull(p);
    return data->on_hole[data_id](p);
  }

  int classify(Complex z, double* val) const {
    bool edge = z.real() <= box.x0 + 0.25 * box.h ||
                z.real() >= box.x1() - 0.25 * box.h ||
                z.imag() >= box.y1() - 0.25 * box.h;
    if (dom->kind == DomainKind::annulus) {
      double a = std::abs(z);
      if (a <= 1.0 + tol_on) {
        *val = data->on_hole[0](z / std::max(a, 1e-12));
        return 1;
      }
      if (a >= dom->annulus_r - tol_on || edge) {
        Complex p = a > 1e-12 ? z * (dom->annulus_r / a) : Complex(dom->annulus_r, 0);
        *val = data->on_real(std::arg(p));
        return 1;
      }
      return 0;
    }
    if (z.imag() <= 0.25 * box.h) {  // bottom row = real axis
      *val = data->on_real(z.real());
      return 1;
    }
    if (edge) {
      *val = data->far_base(z);
      return 1;
    }
    for (const auto& f : feats) {
      if (f.kind == RasterFeature::Kind::seg) {
        if (dist_point_segment(z, f.a, f.b) <= tol_on) {
          *val = value_at(f.data_id, z);
          return 1;
        }
      } else if (f.kind == RasterFeature::Kind::circle_hole) {
        if (std::abs(z - f.c) <= f.r + tol_on) {
          Complex p = f.c + f.r * (z - f.c) / std::max(std::abs(z - f.c), 1e-12);
          *val = value_at(f.data_id, p);
          return 1;
        }
      }
    }
    return 0;
  }

  bool cut(Complex z, int dir, double h, double* theta, double* bval) const {
    static const Complex dirs[4] = {Complex(1, 0), Complex(-1, 0),
                                    Complex(0, 1), Complex(0, -1)};
    Complex z1 = z + h * dirs[dir];
    double best_t = 2.0;
    double best_v = 0.0;
    auto consider_t = [&](double t, double v) {
      if (t > 1e-9 && t <= 1.0 && t < best_t) {
        best_t = t;
        best_v = v;
      }
    };
    if (dom->kind == DomainKind::annulus) {
      auto circle_cut = [&](double r, bool inner) {
        Complex dz = z1 - z, w = z;
        double A = std::norm(dz);
        double B = 2.0 * (w.real() * dz.real() + w.imag() * dz.imag());
        double C = std::norm(w) - r * r;
        double disc = B * B - 4 * A * C;
        if (disc <= 0.0) return;
        double sq = std::sqrt(disc);
        for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
          if (t > 1e-9 && t <= 1.0) {
            Complex p = z + t * dz;
            p *= r / std::abs(p);
            double v = inner ? data->on_hole[0](p) : data->on_real(std::arg(p));
            consider_t(t, v);
            break;
          }
        }
      };
      circle_cut(1.0, true);
      circle_cut(dom->annulus_r, false);
    } else {
      for (const auto& f : feats) {
        if (f.kind == RasterFeature::Kind::seg) {
          Complex sd = f.b - f.a;
          double den = sd.real() * (z1 - z).imag() - sd.imag() * (z1 - z).real();
          if (std::fabs(den) < 1e-300) continue;
          // solve a + u*sd = z + t*(z1-z)
          Complex rhs = z - f.a;
          double u = (rhs.real() * (z1 - z).imag() - rhs.imag() * (z1 - z).real()) / den;
          double t = (rhs.real() * sd.imag() - rhs.imag() * sd.real()) / -den;
          if (u < 0.0 || u > 1.0) continue;
          if (t > 1e-9 && t <= 1.0) consider_t(t, value_at(f.data_id, f.a + u * sd));
        } else {
          Complex dz = z1 - z, w = z - f.c;
          double A = std::norm(dz);
          double B = 2.0 * (w.real() * dz.real() + w.imag() * dz.imag());
          double C = std::norm(w) - f.r * f.r;
          double disc = B * B - 4 * A * C;
          if (disc <= 0.0) continue;
          double sq = std::sqrt(disc);
          for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
            if (t > 1e-9 && t <= 1.0) {
              Complex p = f.c + (w + t * dz) * (f.r / std::abs(w + t * dz));
              consider_t(t, value_at(f.data_id, p));
              break;
            }
          }
        }
      }
    }
    if (best_t > 1.0) return false;
    *theta = best_t;
    *bval = best_v;
    return true;
  }
};

}  // namespace

GridSolution grid_harmonic_ex(const Domain& d, const GridBoundaryData& data,
                              const GridSpec& box, double tol) {
  if (static_cast<int>(data.on_hole.size()) != d.n_holes())
    throw std::invalid_argument("grid_harmonic: per-hole data size mismatch");
  // mesh must resolve the minimum feature separation by >= 4 cells
  double min_sep = std::numeric_limits<double>::infinity();
  if (d.half_plane_like()) {
    for (int i = 0; i < static_cast<int>(d.holes.size()); ++i) {
      const Hole& h = d.holes[i];
      double d0 = h.kind == Hole::Kind::slit ? h.slit.y
                                             : h.disk.c.imag() - h.disk.r;
      min_sep = std::min(min_sep, d0);
    }
  } else {
    min_sep = d.annulus_r - 1.0;
  }
  if (min_sep < 4.0 * box.h)
    throw std::invalid_argument("grid_harmonic: mesh does not resolve hole separation");

  auto shared = std::make_shared<Rasterizer>();
  shared->dom = &d;
  shared->data = &data;
  shared->box = box;
  shared->tol_on = 1e-9 * std::max(1.0, d.scale());
  if (d.half_plane_like()) {
    int hid = 0;
    for (const Hole& h : d.holes) {
      if (h.kind == Hole::Kind::slit)
        shared->feats.push_back({RasterFeature::Kind::seg,
                                 Complex(h.slit.x1, h.slit.y),
                                 Complex(h.slit.x2, h.slit.y), Complex(), 0.0,
                                 hid});
      else
        shared->feats.push_back({RasterFeature::Kind::circle_hole, Complex(),
                                 Complex(), h.disk.c, h.disk.r, hid});
      ++hid;
    }
    switch (d.hull.kind) {
      case Hull::Kind::empty:
        break;
      case Hull::Kind::vslit:
        shared->feats.push_back({RasterFeature::Kind::seg, Complex(d.hull.x, 0),
                                 Complex(d.hull.x, d.hull.height), Complex(),
                                 0.0, -1});
        break;
      case Hull::Kind::half_disk:
        shared->feats.push_back({RasterFeature::Kind::circle_hole, Complex(),
                                 Complex(), Complex(d.hull.x, 0), d.hull.r, -1});
        break;
      case Hull::Kind::polyline:
        for (std::size_t i = 0; i + 1 < d.hull.pts.size(); ++i)
          shared->feats.push_back({RasterFeature::Kind::seg, d.hull.pts[i],
                                   d.hull.pts[i + 1], Complex(), 0.0, -1});
        break;
    }
  }

  GridBoundaryData pass = data;
  BoundaryGeometry geom;
  Rasterizer* raw = shared.get();
  geom.classify = [raw, shared](Complex z, double* v) { return raw->classify(z, v); };
  geom.cut = [raw](Complex z, int dir, double h, double* th, double* bv) {
    return raw->cut(z, dir, h, th, bv);
  };

  LaplaceSolver solver(box, geom);
  GridSolution out;
  raw->data = &pass;
  out.field = solver.solve(tol);

  if (data.auto_dipole && d.half_plane_like()) {
    // fit v - far_base ~ c * Im z / |z|^2 over a mid shell, then re-solve
    double rbox = std::min({-box.x0, box.x1(), box.y1()});
    double r_lo = 0.65 * rbox, r_hi = 0.85 * rbox;
    double num = 0.0, den = 0.0;
    for (int j = 1; j < box.ny; ++j) {
      for (int i = 1; i <= box.nx; ++i) {
        Complex z = box.node(i, j);
        double a = std::abs(z);
        if (a < r_lo || a > r_hi) continue;
        if (z.imag() < 0.3 * a) continue;
        double basis = z.imag() / (a * a);
        double y = out.field.v[box.idx(i, j)] - data.far_base(z);
        num += basis * y;
        den += basis * basis;
      }
    }
    double c = den > 0 ? num / den : 0.0;
    out.dipole = c;
    auto base = data.far_base;
    pass.far_base = [base, c](Complex z) {
      return base(z) + c * z.imag() / std::norm(z);
    };
    LaplaceSolver solver2(box, geom);
    out.field = solver2.solve(tol);
  }
  return out;
}

GridField grid_harmonic(const Domain& d, const GridBoundaryData& data,
                        const GridSpec& box, double tol) {
  return grid_harmonic_ex(d, data, box, tol).field;
}

GridSpec default_box(const Domain& d, double h, double pad) {
  GridSpec g;
  g.h = h;
  if (d.kind == DomainKind::annulus) {
    double R = d.annulus_r * 1.02;
    int n = static_cast<int>(std::ceil(2 * R / h));
    n += n % 2;
    g.nx = g.ny = n;
    g.x0 = -0.5 * n * h;
    g.y0 = -0.5 * n * h;
    return g;
  }
  double s = d.scale() * pad;
  int nx = static_cast<int>(std::ceil(2 * s / h));
  int ny = static_cast<int>(std::ceil(s / h));
  nx += nx % 2;
  ny += ny % 2;
  g.x0 = -0.5 * nx * h;
  g.y0 = 0.0;
  g.nx = nx;
  g.ny = ny;
  return g;
}

}  // namespace erbm
