#include <doctest.h>

#include <cmath>

#include "bicgeo/instances.h"
#include "bicgeo/region.h"
#include "test_helpers.h"

using namespace bicgeo;
using bicgeo::testing::face_neighborhood;
using bicgeo::testing::point_near_vertex;

namespace {

// A small geodesic triangle around a sampled center: corners drawn from faces
// near the center's face, kept within the given radius.
GeodesicTriangle sample_small_triangle(const ExactGeodesicSolver& solver, Rng& rng,
                                       double radius, bool* ok) {
  const TriangulatedSurface& s = solver.surface();
  const auto cum = face_area_cumsum(s);
  const SurfacePoint center = sample_point(s, rng, cum);
  const auto nearby = face_neighborhood(s, center.face, 3);
  SurfacePoint corner[3];
  int found = 0;
  for (int attempt = 0; attempt < 200 && found < 3; ++attempt) {
    const int f = nearby[rng.next_below(nearby.size())];
    const double r1 = std::sqrt(rng.next_double());
    const double r2 = rng.next_double();
    const SurfacePoint cand =
        surface_point_from_bary(s, f, 1.0 - r1, r1 * (1.0 - r2), r1 * r2);
    if (solver.distance(center, cand) > radius) continue;
    corner[found++] = cand;
  }
  *ok = found == 3;
  if (!*ok) return {};
  GeodesicTriangle t = make_geodesic_triangle(solver, corner[0], corner[1], corner[2]);
  if (t.side_pq < 1e-3 || t.side_qr < 1e-3 || t.side_rp < 1e-3) *ok = false;
  return t;
}

}  // namespace

TEST_CASE("flat triangle away from atoms: exact equality of areas") {
  const TriangulatedSurface cube = make_cube_surface();
  const ExactGeodesicSolver solver(cube);
  // Small triangle inside one square face of the cube, away from corners.
  const SurfacePoint p = surface_point_from_bary(cube, 0, 0.55, 0.25, 0.2);
  const SurfacePoint q = surface_point_from_bary(cube, 0, 0.25, 0.55, 0.2);
  const SurfacePoint r = surface_point_from_bary(cube, 0, 0.25, 0.2, 0.55);
  const GeodesicTriangle tri = make_geodesic_triangle(solver, p, q, r);
  const RegionMeasure m = measure_triangle_region(solver, tri);
  REQUIRE(m.ok);
  CHECK(m.enclosed == -1);
  CHECK(m.atom == 0.0);
  CHECK(m.area ==
        doctest::Approx(model_area(0.0, {tri.side_qr, tri.side_rp, tri.side_pq})).epsilon(1e-12));
  const AreaDistortionResidual res = area_distortion_check(solver, tri);
  REQUIRE(res.ok);
  CHECK(res.lower >= -1e-9);
  CHECK(res.upper >= -1e-9);
  CHECK(std::abs(res.lower) <= 1e-9);
  CHECK(std::abs(res.upper) <= 1e-9);
}

TEST_CASE("cube triangle enclosing a corner: positive atom, inflated area") {
  const TriangulatedSurface cube = make_cube_surface();
  const ExactGeodesicSolver solver(cube);
  const SurfacePoint p = point_near_vertex(cube, 0, 0.30, 0.2);
  const SurfacePoint q = point_near_vertex(cube, 0, 0.33, 0.2 + 0.5 * kPi);
  const SurfacePoint r = point_near_vertex(cube, 0, 0.28, 0.2 + kPi);
  const GeodesicTriangle tri = make_geodesic_triangle(solver, p, q, r);
  const RegionMeasure m = measure_triangle_region(solver, tri);
  REQUIRE(m.ok);
  CHECK(m.enclosed == 0);
  CHECK(m.atom == doctest::Approx(kPi / 2).epsilon(1e-9));
  const double flat = model_area(0.0, {tri.side_qr, tri.side_rp, tri.side_pq});
  CHECK(m.area >= flat - 1e-12);  // positive atom inflates the region area

  const AreaDistortionResidual res = area_distortion_check(solver, tri);
  REQUIRE(res.ok);
  CHECK(res.lower >= -1e-9);
  CHECK(res.upper >= -1e-9);
  // mu(T) - |T^0| <= (pi/4) * ell^2 with room to spare.
  CHECK(res.area - res.flat_area <= 0.25 * kPi * res.ell * res.ell);
}

TEST_CASE("octagon triangle avoiding the vertex: flat development") {
  const OctagonGenus2 oct = make_octagon_genus2(1.0);
  const ExactGeodesicSolver solver(oct.surface);
  const SurfacePoint p = surface_point_from_bary(oct.surface, 2, 0.6, 0.2, 0.2);
  const SurfacePoint q = surface_point_from_bary(oct.surface, 2, 0.2, 0.6, 0.2);
  const SurfacePoint r = surface_point_from_bary(oct.surface, 2, 0.2, 0.2, 0.6);
  const GeodesicTriangle tri = make_geodesic_triangle(solver, p, q, r);
  const RegionMeasure m = measure_triangle_region(solver, tri);
  REQUIRE(m.ok);
  CHECK(m.enclosed == -1);
  const AreaDistortionResidual res = area_distortion_check(solver, tri);
  REQUIRE(res.ok);
  CHECK(res.lower >= -1e-9);
  CHECK(res.upper >= -1e-9);
}

TEST_CASE("sampled area-distortion residuals stay above -1e-6") {
  for (const TriangulatedSurface& s :
       {make_cube_surface(), make_octagon_genus2(1.0).surface}) {
    const ExactGeodesicSolver solver(s);
    Rng rng(2024);
    int checked = 0, skipped = 0;
    for (int i = 0; i < 60; ++i) {
      bool ok = false;
      const GeodesicTriangle tri = sample_small_triangle(solver, rng, 0.35, &ok);
      if (!ok) continue;
      const AreaDistortionResidual res = area_distortion_check(solver, tri);
      if (!res.ok) {
        ++skipped;
        continue;
      }
      CHECK(res.lower >= -1e-6);
      CHECK(res.upper >= -1e-6);
      ++checked;
    }
    CHECK(checked > 20);
    (void)skipped;
  }
}

TEST_CASE("excess estimate around a cube corner approaches the atom") {
  const TriangulatedSurface cube = make_cube_surface();
  ExactSurfaceOracle oracle(cube);
  SUBCASE("single-triangle families at shrinking scales") {
    for (double scale : {0.4, 0.2, 0.1}) {
      const std::array<int, 3> t{
          oracle.add_point(point_near_vertex(cube, 0, scale, 0.1)),
          oracle.add_point(point_near_vertex(cube, 0, scale, 0.1 + 0.5 * kPi)),
          oracle.add_point(point_near_vertex(cube, 0, scale, 0.1 + kPi))};
      const ExcessEstimate est = excess_estimate(oracle, {t});
      CHECK(est.total >= 0.95 * (kPi / 2));
      CHECK(est.total <= kPi / 2 + 1e-3);
    }
  }
  SUBCASE("empty family") {
    const ExcessEstimate est = excess_estimate(oracle, {});
    CHECK(est.total == 0.0);
  }
  SUBCASE("two disjoint corners sum their atoms") {
    std::vector<std::array<int, 3>> family;
    for (VertexId v : {0, 7}) {
      family.push_back({oracle.add_point(point_near_vertex(cube, v, 0.2, 0.3)),
                        oracle.add_point(point_near_vertex(cube, v, 0.2, 0.3 + 0.5 * kPi)),
                        oracle.add_point(point_near_vertex(cube, v, 0.2, 0.3 + kPi))});
    }
    const ExcessEstimate est = excess_estimate(oracle, family);
    CHECK(est.total == doctest::Approx(kPi).epsilon(0.05));
  }
  SUBCASE("nested triangles are rejected") {
    std::vector<std::array<int, 3>> family;
    for (double scale : {0.35, 0.2}) {
      family.push_back({oracle.add_point(point_near_vertex(cube, 0, scale, 0.1)),
                        oracle.add_point(point_near_vertex(cube, 0, scale, 0.1 + 0.5 * kPi)),
                        oracle.add_point(point_near_vertex(cube, 0, scale, 0.1 + kPi))});
    }
    CHECK_THROWS_AS(excess_estimate(oracle, family), GeometryError);
  }
}

TEST_CASE("flat torus excess estimate vanishes") {
  const TriangulatedSurface torus = make_flat_torus();
  ExactSurfaceOracle oracle(torus);
  const std::array<int, 3> t{
      oracle.add_point(surface_point_from_local(torus, 0, {0.5, 0.2})),
      oracle.add_point(surface_point_from_local(torus, 0, {0.8, 0.3})),
      oracle.add_point(surface_point_from_local(torus, 0, {0.6, 0.45}))};
  const ExcessEstimate est = excess_estimate(oracle, {t});
  CHECK(std::abs(est.total) <= 2e-3);
}
