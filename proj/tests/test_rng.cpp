#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

using namespace erbm;

TEST_CASE("identical (seed, stream) reproduces identical bits") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(42, 8);
  bool all_equal = true;
  RngStream a2(42, 7);
  for (int i = 0; i < 100; ++i) all_equal &= (a2.next_u64() == c.next_u64());
  CHECK_FALSE(all_equal);
}

TEST_CASE("derived streams differ from parent and from each other") {
  RngStream base(1, 0);
  std::set<std::uint64_t> ids;
  for (std::uint64_t k = 0; k < 100; ++k) ids.insert(base.derive(k).stream_id());
  CHECK(ids.size() == 100);
  CHECK(base.derive("checkA").stream_id() != base.derive("checkB").stream_id());
}

TEST_CASE("uniform moments and range") {
  RngStream r(3, 1);
  RunningStat s;
  for (int i = 0; i < 200000; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    s.add(u);
  }
  CHECK(std::fabs(s.mean() - 0.5) < 5 * s.stderr_mean());
}

TEST_CASE("gaussian moments") {
  RngStream r(5, 2);
  RunningStat s, s2;
  for (int i = 0; i < 200000; ++i) {
    double g = r.gaussian();
    s.add(g);
    s2.add(g * g);
  }
  CHECK(std::fabs(s.mean()) < 5 * s.stderr_mean());
  CHECK(std::fabs(s2.mean() - 1.0) < 5 * s2.stderr_mean());
}

TEST_CASE("chunked_reduce result independent of job count") {
  auto run = [](int jobs) {
    RngStream base(9, 4);
    return chunked_reduce<double>(
        100000, 4096, jobs, 0.0,
        [&](std::size_t b, std::size_t e, std::size_t, double& acc) {
          for (std::size_t i = b; i < e; ++i) {
            RngStream r = base.derive(i);
            acc += r.uniform();
          }
        },
        [](double& t, const double& a) { t += a; });
  };
  double one = run(1), two = run(2), four = run(4);
  CHECK(one == two);
  CHECK(one == four);
}

TEST_CASE("stats helpers: chi2 and KS sanity") {
  CHECK(chi2_sf(0.0, 5) == doctest::Approx(1.0));
  CHECK(chi2_sf(4.351, 10) == doctest::Approx(0.930).epsilon(0.01));
  CHECK(ks_pvalue(0.5, 1000) < 1e-6);
  CHECK(ks_pvalue(0.01, 100) > 0.9);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, 0.0, 2.0, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 7);
  CHECK(s == doctest::Approx(std::pow(2.0, 8) / 8.0).epsilon(1e-12));
  // integral of sin over [0, pi]
  gauss_legendre(32, 0.0, M_PI, x, w);
  s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::sin(x[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
}
