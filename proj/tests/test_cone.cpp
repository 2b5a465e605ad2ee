#include <doctest.h>

#include <cmath>
#include <vector>

#include "bicgeo/cone.h"
#include "bicgeo/rng.h"

using namespace bicgeo;

TEST_CASE("cone distance: theta = 2*pi reduces to the model plane") {
  for (double kappa : {0.0, 1.0, -1.0}) {
    const ConeSpec cone{kappa, kTwoPi};
    const ConePoint p = make_cone_point(cone, 0.8, 1.3);
    const ConePoint q = make_cone_point(cone, 0.3, 1.3);
    CHECK(cone_distance(cone, p, q) == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("cone distance: quarter turn on a half-plane cone") {
  const ConeSpec cone{0.0, kPi};
  const ConePoint p = make_cone_point(cone, 1.0, 0.0);
  const ConePoint q = make_cone_point(cone, 1.0, kPi / 2.0);
  CHECK(cone_distance(cone, p, q) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("cone distance: wide gap goes through the apex") {
  const ConeSpec cone{0.0, 3.0 * kPi};
  const ConePoint p = make_cone_point(cone, 1.0, 0.0);
  const ConePoint q = make_cone_point(cone, 1.0, 1.4 * kPi);
  CHECK(cone_distance(cone, p, q) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("curvature atom and the polygon turn-sum audit") {
  CHECK(cone_curvature_atom({0.0, kTwoPi}) == doctest::Approx(0.0));
  CHECK(cone_curvature_atom({0.0, 1.5 * kPi}) == doctest::Approx(kPi / 2).epsilon(1e-15));

  // Circle of radius r around the apex, approximated by an inscribed
  // geodesic polygon: total left turn + atom = 2*pi (discrete Gauss-Bonnet),
  // and the turn sum equals theta for every polygon enclosing only the apex.
  for (double theta : {1.5 * kPi, 3.0 * kPi}) {
    const ConeSpec cone{0.0, theta};
    const double r = 0.7;
    for (int m : {16, 64}) {
      std::vector<ConePoint> poly;
      for (int i = 0; i < m; ++i) poly.push_back(make_cone_point(cone, r, i * theta / m));
      double turn_sum = 0.0;
      for (int i = 0; i < m; ++i) {
        const ConePoint& prev = poly[(i + m - 1) % m];
        const ConePoint& next = poly[(i + 1) % m];
        const double a = cone_distance(cone, prev, next);
        const double b = cone_distance(cone, poly[i], prev);
        const double c = cone_distance(cone, poly[i], next);
        turn_sum += kPi - model_angle(0.0, {a, b, c});
      }
      CHECK(turn_sum == doctest::Approx(theta).epsilon(1e-9));
      CHECK(turn_sum + cone_curvature_atom(cone) == doctest::Approx(kTwoPi).epsilon(1e-9));
    }
  }
}

TEST_CASE("cone certification") {
  CHECK(cone_certify({0.0, 1.5 * kPi}, 0.0) == Certification::BICB);
  CHECK(cone_certify({-1.0, 3.0 * kPi}, -1.0) == Certification::BICA);
  CHECK(cone_certify({0.0, kTwoPi}, 0.0) == Certification::Both);
  CHECK(cone_certify({0.0, 3.0 * kPi}, 0.0) == Certification::BICA);
  CHECK(cone_certify({1.0, 1.5 * kPi}, 0.0) == Certification::BICB);
  CHECK(cone_certify({0.5, 3.0 * kPi}, 0.0) == Certification::Neither);
}

TEST_CASE("metric axioms on random triples") {
  Rng rng(101);
  const ConeSpec cones[] = {{0.0, 1.5 * kPi}, {0.0, 3.0 * kPi}, {1.0, 1.5 * kPi},
                            {-1.0, 3.0 * kPi}};
  for (const ConeSpec& cone : cones) {
    const double rmax = cone.kappa > 0.0 ? 0.99 * max_cone_radius(cone) : 2.0;
    for (int i = 0; i < 2500; ++i) {
      const ConePoint a = make_cone_point(cone, rng.uniform(0, rmax), rng.uniform(0, cone.theta));
      const ConePoint b = make_cone_point(cone, rng.uniform(0, rmax), rng.uniform(0, cone.theta));
      const ConePoint c = make_cone_point(cone, rng.uniform(0, rmax), rng.uniform(0, cone.theta));
      const double ab = cone_distance(cone, a, b);
      const double ba = cone_distance(cone, b, a);
      CHECK(ab == ba);  // symmetry is exact
      const double bc = cone_distance(cone, b, c);
      const double ac = cone_distance(cone, a, c);
      CHECK(ac <= ab + bc + 1e-12);
      CHECK(ab >= 0.0);
    }
  }
}

TEST_CASE("point on geodesic: endpoints and midpoint consistency") {
  Rng rng(31);
  const ConeSpec cones[] = {{0.0, 1.5 * kPi}, {0.0, 3.0 * kPi}, {-1.0, 2.5 * kPi}};
  for (const ConeSpec& cone : cones) {
    for (int i = 0; i < 300; ++i) {
      const ConePoint p = make_cone_point(cone, rng.uniform(0.1, 1.5), rng.uniform(0, cone.theta));
      const ConePoint q = make_cone_point(cone, rng.uniform(0.1, 1.5), rng.uniform(0, cone.theta));
      const double d = cone_distance(cone, p, q);
      const ConePoint at0 = cone_point_on_geodesic(cone, p, q, 0.0);
      const ConePoint at1 = cone_point_on_geodesic(cone, p, q, 1.0);
      CHECK(cone_distance(cone, at0, p) == doctest::Approx(0.0).scale(1).epsilon(1e-10));
      CHECK(cone_distance(cone, at1, q) == doctest::Approx(0.0).scale(1).epsilon(1e-10));
      const ConePoint mid = cone_point_on_geodesic(cone, p, q, 0.5);
      CHECK(cone_distance(cone, p, mid) + cone_distance(cone, mid, q) ==
            doctest::Approx(d).epsilon(1e-10));
      CHECK(cone_distance(cone, p, mid) == doctest::Approx(d / 2).epsilon(1e-9));
    }
  }
}

TEST_CASE("apex queries and cap restriction") {
  const ConeSpec cone{1.0, 1.5 * kPi};
  CHECK(max_cone_radius(cone) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(make_cone_point(cone, kPi / 2 + 0.01, 0.0), GeometryError);
  const ConePoint apex = make_cone_point(cone, 0.0, 0.0);
  const ConePoint q = make_cone_point(cone, 1.2, 2.0);
  CHECK(cone_distance(cone, apex, q) == doctest::Approx(1.2).epsilon(1e-14));
}
