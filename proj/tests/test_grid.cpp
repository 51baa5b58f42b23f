#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/brownian.hpp"
#include "core/geometry.hpp"
#include "core/grid.hpp"

using namespace erbm;

TEST_CASE("constant boundary data gives the constant field") {
  Domain d = Domain::chordal({Slit{1.0, -1.0, 1.0}});
  GridBoundaryData data = GridBoundaryData::zero(d);
  data.on_real = [](double) { return 3.0; };
  data.on_hole[0] = [](Complex) { return 3.0; };
  data.far_base = [](Complex) { return 3.0; };
  GridSpec box = default_box(d, 0.05, 3.0);
  GridField f = grid_harmonic(d, data, box);
  CHECK(std::fabs(f.eval(Complex(0.3, 0.7)) - 3.0) < 1e-9);
  CHECK(std::fabs(f.eval(Complex(-2.0, 2.5)) - 3.0) < 1e-9);
}

TEST_CASE("harmonic polynomial Im z is reproduced") {
  // strip-like box with data Im z on every boundary piece
  Domain d = Domain::upper_half_plane();
  GridBoundaryData data = GridBoundaryData::zero(d);
  data.on_real = [](double) { return 0.0; };
  data.far_base = [](Complex z) { return z.imag(); };
  GridSpec box{-2.0, 0.0, 0.025, 160, 80};
  GridField f = grid_harmonic(d, data, box);
  for (double x : {-1.0, 0.0, 0.7})
    for (double y : {0.3, 0.9, 1.4})
      CHECK(std::fabs(f.eval(Complex(x, y)) - y) < 1e-8);
}

TEST_CASE("annulus harmonic measure has the closed form and O(h^2) error") {
  // h1(z) = (log R - log|z|) / log R on 1 < |z| < R
  double R = std::exp(1.0);
  Domain a = Domain::annulus(R);
  auto run = [&](double h) {
    GridBoundaryData data = GridBoundaryData::zero(a);
    data.on_hole[0] = [](Complex) { return 1.0; };
    GridSpec box = default_box(a, h);
    GridField f = grid_harmonic(a, data, box);
    double err = 0.0;
    for (double r : {1.2, 1.6, 2.1, 2.5})
      for (int k = 0; k < 8; ++k) {
        double th = 2 * M_PI * k / 8;
        Complex z = std::polar(r, th);
        double exact = (std::log(R) - std::log(r)) / std::log(R);
        err = std::max(err, std::fabs(f.eval(z) - exact));
      }
    return err;
  };
  double e1 = run(0.04);
  double e2 = run(0.02);
  CHECK(e1 < 2e-3);
  // error drops by about four when h halves (allowing some slack)
  CHECK(e2 < e1 / 2.5);
}

TEST_CASE("slit harmonic measure: flux through surrounding contours is consistent") {
  Domain d = Domain::chordal({Slit{1.0, -1.0, 1.0}});
  GridBoundaryData data = GridBoundaryData::zero(d);
  data.on_hole[0] = [](Complex) { return 1.0; };
  data.auto_dipole = true;
  GridSpec box = default_box(d, 0.02, 4.0);
  GridField f = grid_harmonic(d, data, box);
  double f1 = rect_flux(f, -1.4, 1.4, 0.6, 1.4);
  double f2 = rect_flux(f, -1.8, 1.8, 0.35, 1.65);
  CHECK(f1 < 0.0);  // h1 decreases away from the slit
  CHECK(std::fabs(f1 - f2) < 0.02 * std::fabs(f1));
}

TEST_CASE("far-field dipole fit improves the truncated solution") {
  // without the dipole term, the box boundary forces h1 to zero too early
  Domain d = Domain::chordal({Slit{1.0, -1.0, 1.0}});
  Complex probe(0.0, 2.0);
  auto value_with = [&](bool dip, double pad) {
    GridBoundaryData data = GridBoundaryData::zero(d);
    data.on_hole[0] = [](Complex) { return 1.0; };
    data.auto_dipole = dip;
    GridField f = grid_harmonic(d, data, default_box(d, 0.02, pad));
    return f.eval(probe);
  };
  double big = value_with(true, 8.0);      // reference
  double small_dip = value_with(true, 3.0);
  double small_raw = value_with(false, 3.0);
  CHECK(std::fabs(small_dip - big) < std::fabs(small_raw - big));
}

TEST_CASE("mesh resolution guard") {
  Domain d = Domain::chordal({Slit{0.05, -1.0, 1.0}});  // hole close to axis
  GridBoundaryData data = GridBoundaryData::zero(d);
  GridSpec box = default_box(d, 0.05, 3.0);
  CHECK_THROWS(grid_harmonic(d, data, box));
}
