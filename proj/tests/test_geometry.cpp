#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/geometry.hpp"
#include "core/rng.hpp"

using namespace erbm;

static Domain one_slit() { return Domain::chordal({Slit{1.0, -1.0, 1.0}}); }

TEST_CASE("contains: chordal standard with slit y=1, [-1,1]") {
  Domain d = one_slit();
  CHECK(contains(d, Complex(0, 2)));                // far interior point
  CHECK_FALSE(contains(d, Complex(0.5, 1.0)));      // on the slit
  CHECK_FALSE(contains(d, Complex(0, -0.5)));       // lower half-plane is A0
  CHECK_FALSE(contains(d, Complex(0, 0)));
}

TEST_CASE("dist_boundary") {
  Domain h = Domain::upper_half_plane();
  CHECK(dist_boundary(h, Complex(0, 1)) == doctest::Approx(1.0));
  Domain d = one_slit();
  CHECK(dist_boundary(d, Complex(0, 3)) == doctest::Approx(2.0));
  Domain a = Domain::annulus(2.0);
  CHECK(dist_boundary(a, Complex(1.5, 0)) == doctest::Approx(0.5));
  CHECK_THROWS(dist_boundary(d, Complex(0, -1)));
}

TEST_CASE("dist_boundary is a lower bound for distances to boundary samples") {
  Domain d = Domain::chordal({Slit{1.0, -1.0, 1.0}, Slit{0.5, 2.0, 3.0}});
  RngStream rng(11, 0);
  for (int k = 0; k < 200; ++k) {
    Complex z(rng.uniform(-4, 4), rng.uniform(0.01, 4));
    if (!contains(d, z)) continue;
    double db = dist_boundary(d, z);
    // boundary samples: real axis and slit points
    for (int m = 0; m <= 50; ++m) {
      double t = m / 50.0;
      CHECK(db <= std::abs(z - Complex(-4 + 8 * t, 0.0)) + 1e-12);
      CHECK(db <= std::abs(z - Complex(-1 + 2 * t, 1.0)) + 1e-12);
      CHECK(db <= std::abs(z - Complex(2 + t, 0.5)) + 1e-12);
    }
  }
}

TEST_CASE("slit_to_disk: endpoint and top-side midpoint in normalized frame") {
  Slit s{0.0, -2.0, 2.0};  // normalized frame (height 0 is synthetic here)
  // endpoint correspondence z = 2 -> zeta = 1
  CHECK(std::abs(slit_to_disk_boundary(s, 2.0, SlitSide::top) - Complex(1, 0)) < 1e-12);
  // top-side midpoint maps to i (zeta + 1/zeta = 0)
  CHECK(std::abs(slit_to_disk_boundary(s, 0.0, SlitSide::top) - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(slit_to_disk_boundary(s, 0.0, SlitSide::bottom) - Complex(0, -1)) < 1e-12);
}

TEST_CASE("slit_to_disk round trip on 1000 random points") {
  Slit s{1.0, -1.5, 0.5};
  RngStream rng(2, 3);
  int checked = 0;
  while (checked < 1000) {
    Complex z(rng.uniform(-5, 5), rng.uniform(-5, 5));
    if (dist_point_segment(z, Complex(s.x1, s.y), Complex(s.x2, s.y)) < 1e-3) continue;
    Complex zeta = slit_to_disk(s, z);
    CHECK(std::abs(zeta) > 1.0);
    Complex back = disk_to_slit(s, zeta);
    CHECK(std::abs(back - z) < 1e-12 * std::max(1.0, std::abs(z)));
    ++checked;
  }
}

TEST_CASE("slit sides map onto upper/lower unit semicircles") {
  Slit s{2.0, 0.0, 3.0};
  RngStream rng(8, 1);
  for (int k = 0; k < 200; ++k) {
    double x = rng.uniform(s.x1, s.x2);
    Complex top = slit_to_disk_boundary(s, x, SlitSide::top);
    Complex bot = slit_to_disk_boundary(s, x, SlitSide::bottom);
    CHECK(std::abs(std::abs(top) - 1.0) < 1e-12);
    CHECK(top.imag() >= -1e-12);
    CHECK(bot.imag() <= 1e-12);
    // approach from above converges to the top-side image
    Complex z(x, s.y + 1e-9);
    CHECK(std::abs(slit_to_disk(s, z) - top) < 1e-4);
  }
}

TEST_CASE("strip_to_annulus") {
  CHECK(std::abs(strip_to_annulus(1.0, Complex(0, 0)) - Complex(1, 0)) < 1e-15);
  RngStream rng(4, 4);
  for (int k = 0; k < 100; ++k) {
    Complex z(rng.uniform(-10, 10), rng.uniform(0.01, 0.99));
    Complex w = strip_to_annulus(1.0, z);
    CHECK(std::abs(w) == doctest::Approx(std::exp(-z.imag())).epsilon(1e-12));
    // local isometry of the angular coordinate
    double da = std::remainder(std::arg(w) - z.real(), 2 * M_PI);
    CHECK(std::fabs(da) < 1e-12);
    // periodicity
    Complex w2 = strip_to_annulus(1.0, z + Complex(2 * M_PI, 0));
    CHECK(std::abs(w - w2) < 1e-12);
  }
}

TEST_CASE("domain JSON round trip") {
  Domain d = Domain::halfplane(
      {Hole::make(Slit{1.0, -1.0, 1.0}), Hole::make(DiskHole{Complex(3, 2), 0.5})},
      Hull::vertical_slit(0.0, 0.25));
  Domain back = domain_from_json(domain_to_json(d));
  CHECK(back.kind == d.kind);
  CHECK(back.holes.size() == 2);
  CHECK(back.holes[0].slit.y == 1.0);
  CHECK(back.holes[1].disk.r == 0.5);
  CHECK(back.hull.kind == Hull::Kind::vslit);

  Domain a = Domain::annulus(2.5);
  CHECK(domain_from_json(domain_to_json(a)).annulus_r == 2.5);
}

TEST_CASE("curve JSON and validation") {
  CurveSample c;
  for (int k = 0; k <= 10; ++k) {
    double t = 0.1 * k;
    c.times.push_back(t);
    c.points.push_back(Complex(0.0, 2.0 * std::sqrt(t)));
  }
  c.points[0] = Complex(0, 0);
  c.validate();
  CurveSample back = curve_from_json(curve_to_json(c));
  CHECK(back.times.size() == 11);
  CHECK(std::abs(back.at(0.05) - c.at(0.05)) < 1e-15);

  CurveSample bad = c;
  bad.times[5] = bad.times[4];  // not strictly increasing
  CHECK_THROWS(bad.validate());

  CurveSample cross;
  cross.times = {0, 1, 2, 3};
  cross.points = {Complex(0, 0), Complex(0, 1), Complex(1, 0.5), Complex(-1, 0.5)};
  CHECK_THROWS(cross.validate());
}

TEST_CASE("domain validation rejects bad shapes") {
  CHECK_THROWS(Domain::chordal({Slit{0.0, -1.0, 1.0}}));   // zero height
  CHECK_THROWS(Domain::chordal({Slit{1.0, 1.0, -1.0}}));   // reversed
  CHECK_THROWS(Domain::annulus(0.9));                      // outer radius <= 1
  CHECK_THROWS(Domain::chordal({Slit{1.0, -1.0, 1.0}, Slit{1.0, 0.0, 2.0}}));  // overlap
}
