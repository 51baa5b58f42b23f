#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erbm {

// ---- GridField ----

bool GridField::inside(Complex z) const {
  return z.real() >= g.x0 && z.real() <= g.x1() && z.imag() >= g.y0 &&
         z.imag() <= g.y1();
}

double GridField::eval(Complex z) const {
  double fx = (z.real() - g.x0) / g.h;
  double fy = (z.imag() - g.y0) / g.h;
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 1);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 1);
  double ax = std::clamp(fx - i, 0.0, 1.0);
  double ay = std::clamp(fy - j, 0.0, 1.0);
  const double v00 = v[g.idx(i, j)], v10 = v[g.idx(i + 1, j)];
  const double v01 = v[g.idx(i, j + 1)], v11 = v[g.idx(i + 1, j + 1)];
  return (1 - ax) * (1 - ay) * v00 + ax * (1 - ay) * v10 +
         (1 - ax) * ay * v01 + ax * ay * v11;
}

Complex GridField::grad(Complex z) const {
  double d = g.h;
  double gx = (eval(z + Complex(d, 0)) - eval(z - Complex(d, 0))) / (2 * d);
  double gy = (eval(z + Complex(0, d)) - eval(z - Complex(0, d))) / (2 * d);
  return Complex(gx, gy);
}

// ---- LaplaceSolver ----

namespace {
constexpr double kThetaMin = 1e-3;
}

struct LaplaceSolver::Level {
  GridSpec g;
  std::vector<uint8_t> fixed;
  std::vector<double> aE, aW, aN, aS, diag;
  std::vector<double> bterm;  // boundary contributions to the rhs (finest only)
  std::vector<double> fixedval;
  mutable std::vector<double> u, f, r;
};

LaplaceSolver::LaplaceSolver(GridSpec spec, BoundaryGeometry geom) {
  if (spec.nx < 4 || spec.ny < 4)
    throw std::invalid_argument("grid too small");
  GridSpec g = spec;
  bool finest = true;
  for (;;) {
    auto lv = std::make_shared<Level>();
    lv->g = g;
    int nn = g.n_nodes();
    lv->fixed.assign(nn, 0);
    lv->aE.assign(nn, 0);
    lv->aW.assign(nn, 0);
    lv->aN.assign(nn, 0);
    lv->aS.assign(nn, 0);
    lv->diag.assign(nn, 1);
    lv->bterm.assign(nn, 0);
    lv->fixedval.assign(nn, 0);
    lv->u.assign(nn, 0);
    lv->f.assign(nn, 0);
    lv->r.assign(nn, 0);
    const double h = g.h;
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        int id = g.idx(i, j);
        Complex z = g.node(i, j);
        double val = 0;
        int cls = geom.classify(z, &val);
        bool edge = i == 0 || i == g.nx || j == 0 || j == g.ny;
        if (edge && cls == 0)
          throw std::logic_error("box edge node not classified fixed");
        if (cls != 0) {
          lv->fixed[id] = 1;
          lv->fixedval[id] = finest ? val : 0.0;
          continue;
        }
        // Shortley-Weller arms
        double th[4] = {1, 1, 1, 1};
        double bv[4] = {0, 0, 0, 0};
        bool cutf[4] = {false, false, false, false};
        for (int dir = 0; dir < 4; ++dir) {
          double t = 1, b = 0;
          if (geom.cut(z, dir, h, &t, &b)) {
            th[dir] = std::max(t, kThetaMin);
            bv[dir] = finest ? b : 0.0;
            cutf[dir] = true;
          }
        }
        double cE = 2.0 / (h * h * th[0] * (th[0] + th[1]));
        double cW = 2.0 / (h * h * th[1] * (th[0] + th[1]));
        double cN = 2.0 / (h * h * th[2] * (th[2] + th[3]));
        double cS = 2.0 / (h * h * th[3] * (th[2] + th[3]));
        lv->diag[id] = cE + cW + cN + cS;
        lv->aE[id] = cutf[0] ? 0 : cE;
        lv->aW[id] = cutf[1] ? 0 : cW;
        lv->aN[id] = cutf[2] ? 0 : cN;
        lv->aS[id] = cutf[3] ? 0 : cS;
        lv->bterm[id] = (cutf[0] ? cE * bv[0] : 0) + (cutf[1] ? cW * bv[1] : 0) +
                        (cutf[2] ? cN * bv[2] : 0) + (cutf[3] ? cS * bv[3] : 0);
      }
    }
    levels_.push_back(lv);
    finest = false;
    if (g.nx % 2 || g.ny % 2 || std::min(g.nx, g.ny) < 8 ||
        levels_.size() >= 12)
      break;
    g.nx /= 2;
    g.ny /= 2;
    g.h *= 2;
  }
}

struct LevelOps {
  static void sweep(const LaplaceSolver::Level& lv, int parity) {
    const GridSpec& g = lv.g;
    for (int j = 1; j < g.ny; ++j) {
      int i0 = 1 + ((j + parity) & 1);
      for (int i = i0; i < g.nx; i += 2) {
        int id = g.idx(i, j);
        if (lv.fixed[id]) continue;
        double s = lv.f[id] + lv.bterm[id];
        s += lv.aE[id] * lv.u[id + 1] + lv.aW[id] * lv.u[id - 1] +
             lv.aN[id] * lv.u[id + g.nx + 1] + lv.aS[id] * lv.u[id - g.nx - 1];
        lv.u[id] = s / lv.diag[id];
      }
    }
  }

  static double residual(const LaplaceSolver::Level& lv) {
    const GridSpec& g = lv.g;
    double rmax = 0;
    for (int j = 1; j < g.ny; ++j) {
      for (int i = 1; i < g.nx; ++i) {
        int id = g.idx(i, j);
        if (lv.fixed[id]) {
          lv.r[id] = 0;
          continue;
        }
        double s = lv.f[id] + lv.bterm[id] +
                   lv.aE[id] * lv.u[id + 1] + lv.aW[id] * lv.u[id - 1] +
                   lv.aN[id] * lv.u[id + g.nx + 1] +
                   lv.aS[id] * lv.u[id - g.nx - 1] - lv.diag[id] * lv.u[id];
        lv.r[id] = s;
        rmax = std::max(rmax, std::fabs(s) / lv.diag[id]);
      }
    }
    return rmax;  // residual expressed in solution units
  }

  static void restrict_residual(const LaplaceSolver::Level& fine,
                                const LaplaceSolver::Level& coarse) {
    const GridSpec& gc = coarse.g;
    const GridSpec& gf = fine.g;
    std::fill(coarse.f.begin(), coarse.f.end(), 0.0);
    std::fill(coarse.u.begin(), coarse.u.end(), 0.0);
    for (int j = 1; j < gc.ny; ++j) {
      for (int i = 1; i < gc.nx; ++i) {
        int idc = gc.idx(i, j);
        if (coarse.fixed[idc]) continue;
        int fi = 2 * i, fj = 2 * j;
        double s = 0;
        static const double w[3][3] = {
            {1 / 16.0, 1 / 8.0, 1 / 16.0},
            {1 / 8.0, 1 / 4.0, 1 / 8.0},
            {1 / 16.0, 1 / 8.0, 1 / 16.0}};
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di)
            s += w[dj + 1][di + 1] * fine.r[gf.idx(fi + di, fj + dj)];
        coarse.f[idc] = s;
      }
    }
  }

  static void prolong_add(const LaplaceSolver::Level& coarse,
                          const LaplaceSolver::Level& fine) {
    const GridSpec& gc = coarse.g;
    const GridSpec& gf = fine.g;
    for (int j = 0; j <= gf.ny; ++j) {
      for (int i = 0; i <= gf.nx; ++i) {
        int idf = gf.idx(i, j);
        if (fine.fixed[idf]) continue;
        double ci = 0.5 * i, cj = 0.5 * j;
        int i0 = static_cast<int>(std::floor(ci)), j0 = static_cast<int>(std::floor(cj));
        i0 = std::min(i0, gc.nx - 1);
        j0 = std::min(j0, gc.ny - 1);
        double ax = ci - i0, ay = cj - j0;
        double e = (1 - ax) * (1 - ay) * coarse.u[gc.idx(i0, j0)] +
                   ax * (1 - ay) * coarse.u[gc.idx(i0 + 1, j0)] +
                   (1 - ax) * ay * coarse.u[gc.idx(i0, j0 + 1)] +
                   ax * ay * coarse.u[gc.idx(i0 + 1, j0 + 1)];
        fine.u[idf] += e;
      }
    }
  }
};

GridField LaplaceSolver::solve(double tol, int max_cycles) const {
  const auto& top = *levels_.front();
  // initialize: fixed values on the finest level, zero elsewhere
  std::fill(top.u.begin(), top.u.end(), 0.0);
  std::fill(top.f.begin(), top.f.end(), 0.0);
  double data_scale = 1e-300;
  for (int id = 0; id < top.g.n_nodes(); ++id) {
    if (top.fixed[id]) {
      top.u[id] = top.fixedval[id];
      data_scale = std::max(data_scale, std::fabs(top.fixedval[id]));
    }
    data_scale = std::max(data_scale, std::fabs(top.bterm[id] / top.diag[id]));
  }

  auto vcycle = [&](auto&& self, std::size_t l) -> void {
    const auto& lv = *levels_[l];
    if (l + 1 == levels_.size()) {
      for (int s = 0; s < 400; ++s) {
        LevelOps::sweep(lv, 0);
        LevelOps::sweep(lv, 1);
      }
      return;
    }
    for (int s = 0; s < 2; ++s) {
      LevelOps::sweep(lv, 0);
      LevelOps::sweep(lv, 1);
    }
    LevelOps::residual(lv);
    LevelOps::restrict_residual(lv, *levels_[l + 1]);
    self(self, l + 1);
    LevelOps::prolong_add(*levels_[l + 1], lv);
    for (int s = 0; s < 2; ++s) {
      LevelOps::sweep(lv, 1);
      LevelOps::sweep(lv, 0);
    }
  };

  double target = tol * std::max(1.0, data_scale);
  for (int c = 0; c < max_cycles; ++c) {
    vcycle(vcycle, 0);
    double rmax = LevelOps::residual(top);
    if (rmax < target) break;
  }

  GridField out;
  out.g = top.g;
  out.v = top.u;
  return out;
}

// ---- contour fluxes ----

namespace {

double normal_derivative(const GridField& f, Complex p, Complex n) {
  double d = f.g.h;
  return (f.eval(p + d * n) - f.eval(p - d * n)) / (2 * d);
}

}  // namespace

double rect_flux(const GridField& f, double xa, double xb, double ya, double yb) {
  double h = f.g.h;
  double total = 0;
  auto edge = [&](Complex a, Complex b, Complex n) {
    double len = std::abs(b - a);
    int m = std::max(2, static_cast<int>(std::ceil(len / (0.5 * h))));
    double s = 0;
    for (int k = 0; k <= m; ++k) {
      Complex p = a + (b - a) * (static_cast<double>(k) / m);
      double w = (k == 0 || k == m) ? 0.5 : 1.0;
      s += w * normal_derivative(f, p, n);
    }
    total += s * (len / m);
  };
  edge(Complex(xa, ya), Complex(xb, ya), Complex(0, -1));  // bottom, outward -y
  edge(Complex(xb, ya), Complex(xb, yb), Complex(1, 0));
  edge(Complex(xb, yb), Complex(xa, yb), Complex(0, 1));
  edge(Complex(xa, yb), Complex(xa, ya), Complex(-1, 0));
  return total;
}

double circle_flux(const GridField& f, Complex c, double r) {
  double h = f.g.h;
  int m = std::max(16, static_cast<int>(std::ceil(2 * M_PI * r / (0.5 * h))));
  double s = 0;
  for (int k = 0; k < m; ++k) {
    double a = 2 * M_PI * k / m;
    Complex n(std::cos(a), std::sin(a));
    s += normal_derivative(f, c + r * n, n);
  }
  return s * (2 * M_PI * r / m);
}

}  // namespace erbm
