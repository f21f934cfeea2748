#include <cmath>

#include "doctest.h"
#include "hodgehx/errors.hpp"
#include "hodgehx/geometry.hpp"
#include "hodgehx/rng.hpp"

using namespace hodgehx;

namespace {

Vec torus_point(double theta, double phi) {
  const double R = 2.0, r = 0.5;
  const double rho = R + r * std::cos(phi);
  return vec3(rho * std::cos(theta), rho * std::sin(theta), r * std::sin(phi));
}

Vec fd_gradient(const ImplicitSurface& s, const Vec& x) {
  const double h = 1e-6;
  Vec g = {0, 0, 0, 0};
  for (int i = 0; i < s.ambient_dim(); ++i) {
    Vec e = {0, 0, 0, 0};
    e[i] = h;
    g[i] = (s.distance(x + e) - s.distance(x - e)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("torus distance vanishes on the surface") {
    const ImplicitSurface s = ImplicitSurface::torus2();
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
      const Vec p = torus_point(6.28 * rng.next_double(), 6.28 * rng.next_double());
      CHECK(std::abs(s.distance(p)) < 1e-14);
    }
    CHECK(s.distance(vec3(2.5, 0, 0)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.distance(vec3(3.0, 0, 0)) == doctest::Approx(0.5));
    CHECK(s.distance(vec3(2.0, 0, 0.25)) == doctest::Approx(-0.25));
  }

  TEST_CASE("normals match the distance gradient") {
    Rng rng(4);
    for (const ImplicitSurface& s :
         {ImplicitSurface::torus2(), ImplicitSurface::sphere3()}) {
      for (int t = 0; t < 20; ++t) {
        Vec x = {0, 0, 0, 0};
        for (int i = 0; i < s.ambient_dim(); ++i) x[i] = 4.0 * rng.next_double() - 2.0;
        if (std::abs(x[0]) + std::abs(x[1]) < 0.3) x[0] += 1.0;
        const Vec n = s.normal(x);
        CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-12));
        const Vec g = fd_gradient(s, x);
        for (int i = 0; i < s.ambient_dim(); ++i)
          CHECK(n[i] == doctest::Approx(g[i]).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("projection lands on the surface and is idempotent") {
    Rng rng(5);
    for (const ImplicitSurface& s :
         {ImplicitSurface::torus2(), ImplicitSurface::sphere3()}) {
      for (int t = 0; t < 20; ++t) {
        Vec x = {0, 0, 0, 0};
        for (int i = 0; i < s.ambient_dim(); ++i) x[i] = 3.0 * rng.next_double() - 1.5;
        if (std::abs(x[0]) + std::abs(x[1]) < 0.3) x[0] += 1.0;
        const Vec p = s.project(x);
        CHECK(std::abs(s.distance(p)) < 1e-12);
        const Vec p2 = s.project(p);
        CHECK(norm(p2 - p) < 1e-12);
      }
    }
  }

  TEST_CASE("medial axis points are rejected") {
    const ImplicitSurface torus = ImplicitSurface::torus2();
    CHECK_THROWS_AS(torus.normal(vec3(0, 0, 1.0)), MedialAxisError);      // the axis
    CHECK_THROWS_AS(torus.project(vec3(2.0, 0, 0)), MedialAxisError);     // the core circle
    const ImplicitSurface sphere = ImplicitSurface::sphere3();
    CHECK_THROWS_AS(sphere.normal(vec4(0, 0, 0, 0)), MedialAxisError);    // the center
  }

  TEST_CASE("sphere distance and projection are radial") {
    const ImplicitSurface s = ImplicitSurface::sphere3();
    const Vec x = vec4(0.3, -0.4, 0.5, 1.2);
    CHECK(s.distance(x) == doctest::Approx(norm(x) - 1.0).epsilon(1e-14));
    const Vec p = s.project(x);
    CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(p - (1.0 / norm(x)) * x) < 1e-14);
  }
}
