#include <doctest.h>

#include <cmath>

#include "bicgeo/cone.h"
#include "bicgeo/exact_geodesics.h"
#include "bicgeo/instances.h"
#include "bicgeo/rng.h"
#include "bicgeo/steiner.h"

using namespace bicgeo;

TEST_CASE("steiner: coincident endpoints") {
  const TriangulatedSurface torus = make_flat_torus();
  SteinerGraph g(torus, 4);
  const SurfacePoint p = surface_point_from_local(torus, 0, {0.3, 0.2});
  CHECK(g.distance(p, p) == doctest::Approx(0.0));
}

TEST_CASE("steiner: flat torus wrap pair converges from above") {
  const TriangulatedSurface torus = make_flat_torus();
  const SurfacePoint p = surface_point_from_local(torus, 0, {0.1, 0.1});
  const SurfacePoint q = surface_point_from_local(torus, 0, {0.9, 0.1});
  double prev = kInfiniteLength;
  for (int r : {2, 4, 8, 16}) {
    const double d = approx_distance(torus, p, q, r);
    CHECK(d >= 0.2 - 1e-12);       // upper bound on the true distance
    CHECK(d <= prev + 1e-12);      // non-increasing under nested refinement
    if (r >= 8) CHECK(d == doctest::Approx(0.2).epsilon(0).scale(1).epsilon(1e-3));
    prev = d;
  }
}

TEST_CASE("steiner: upper bound that tightens toward the exact solver") {
  const TriangulatedSurface cube = make_cube_surface();
  const ExactGeodesicSolver exact(cube);
  Rng rng(3);
  const auto cum = face_area_cumsum(cube);
  std::vector<SurfacePoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(sample_point(cube, rng, cum));

  double worst4 = 0.0, worst16 = 0.0;
  SteinerGraph g4(cube, 4), g16(cube, 16);
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    const double truth = exact.distance(pts[i], pts[i + 1]);
    const double a4 = g4.distance(pts[i], pts[i + 1]);
    const double a16 = g16.distance(pts[i], pts[i + 1]);
    CHECK(a4 >= truth - 1e-12);
    CHECK(a16 >= truth - 1e-12);
    CHECK(a16 <= a4 + 1e-12);
    worst4 = std::max(worst4, a4 - truth);
    worst16 = std::max(worst16, a16 - truth);
  }
  CHECK(worst16 <= worst4 + 1e-12);
  CHECK(worst16 <= 2e-3);
}

TEST_CASE("steiner: kappa=1 icosahedral sphere reaches the round-sphere distance") {
  const TriangulatedSurface icosa = make_sphere_icosa();
  // Nearly antipodal pair: centroids of two opposite faces. Face 0 and its
  // antipode; the true distance on the unit sphere is pi minus nothing for
  // exactly antipodal points, and the centroid of the opposite face is the
  // antipode of face 0's centroid when the faces are antipodal.
  const SurfacePoint a = surface_point_from_bary(icosa, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3);
  // Brute-force the face whose corner-distance profile puts it farthest.
  SteinerGraph coarse(icosa, 2);
  int far_face = 0;
  double far_d = 0.0;
  for (int f = 0; f < 20; ++f) {
    const SurfacePoint c = surface_point_from_bary(icosa, f, 1.0 / 3, 1.0 / 3, 1.0 / 3);
    const double d = coarse.distance(a, c);
    if (d > far_d) {
      far_d = d;
      far_face = f;
    }
  }
  const SurfacePoint b = surface_point_from_bary(icosa, far_face, 1.0 / 3, 1.0 / 3, 1.0 / 3);
  const double d16 = approx_distance(icosa, a, b, 16);
  CHECK(d16 >= kPi - 1e-9);  // nothing is farther than the antipode
  CHECK(d16 == doctest::Approx(kPi).epsilon(0).scale(1).epsilon(2e-2));
}

TEST_CASE("steiner: triangulated cone upper bounds against the closed form") {
  const ConeSpindle sp = make_cone_spindle(3.0 * kPi, 4.0, 20);
  const ConeSpec cone{0.0, 3.0 * kPi};
  // Through-apex pair from the distance examples: gap 1.4*pi, value 2.
  const SurfacePoint p = sp.cap_point(1.0, 0.0);
  const SurfacePoint q = sp.cap_point(1.0, 1.4 * kPi);
  double prev = kInfiniteLength;
  for (int r : {2, 4, 8, 16}) {
    const double d = approx_distance(sp.surface, p, q, r);
    CHECK(d >= 2.0 - 1e-12);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
  CHECK(prev == doctest::Approx(2.0).epsilon(0).scale(1).epsilon(1e-3));
  CHECK(cone_distance(cone, {1.0, 0.0}, {1.0, 1.4 * kPi}) == doctest::Approx(2.0));
}
