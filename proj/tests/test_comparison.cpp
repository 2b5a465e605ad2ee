#include <doctest.h>

#include <cmath>

#include "bicgeo/comparison.h"
#include "bicgeo/instances.h"
#include "test_helpers.h"

using namespace bicgeo;
using bicgeo::testing::point_near_vertex;

TEST_CASE("plane calibration: right angle, degenerate pair, inside/outside quadruples") {
  PlaneOracle plane;
  const int p = plane.add_point({0, 0});
  const int x = plane.add_point({1, 0});
  const int y = plane.add_point({0, 1});
  CHECK(model_angle_at(plane, 0.0, p, x, y).value() == doctest::Approx(kPi / 2).epsilon(1e-12));

  const int y2 = plane.add_point({1, 0});  // x == y2
  CHECK(model_angle_at(plane, 0.0, p, x, y2).value() == doctest::Approx(0.0));

  // p strictly inside the triangle: angles at p sum to exactly 2*pi.
  PlaneOracle o2;
  const int pi_ = o2.add_point({0.2, 0.2});
  const int a = o2.add_point({1, 0});
  const int b = o2.add_point({0, 1});
  const int c = o2.add_point({-0.5, -0.6});
  const auto inside = cbb_quadruple_margin(o2, 0.0, pi_, a, b, c);
  CHECK(std::abs(inside->margin) < 1e-10);
  // p outside: margin strictly positive.
  const int pout = o2.add_point({2.5, 2.5});
  const auto outside = cbb_quadruple_margin(o2, 0.0, pout, a, b, c);
  CHECK(outside->margin > 0.1);
}

TEST_CASE("plane suites pass: CBB(0), CAT(0), point-on-side") {
  PlaneOracle plane;
  SuiteConfig cfg;
  cfg.samples = 3000;
  cfg.pool = 48;
  cfg.seed = 4;
  cfg.tolerance = 1e-10;
  cfg.condition = Condition::CBB;
  const ComparisonReport cbb = run_suite(plane, cfg);
  CHECK(cbb.failures == 0);
  CHECK(cbb.evaluated > 1000);
  CHECK(cbb.worst_margin >= -1e-10);

  PlaneOracle plane2;
  cfg.condition = Condition::CatGlobal;
  const ComparisonReport cat = run_suite(plane2, cfg);
  CHECK(cat.failures == 0);
  CHECK(cat.worst_margin >= -1e-10);

  PlaneOracle plane3;
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const int p = plane3.sample_point(rng);
    const int q = plane3.sample_point(rng);
    const int r = plane3.sample_point(rng);
    const double t = rng.uniform(0.05, 0.95);
    const auto mc = point_side_margin(plane3, 0.0, p, q, r, t, ComparisonMode::CBB);
    const auto ma = point_side_margin(plane3, 0.0, p, q, r, t, ComparisonMode::CAT);
    if (!mc || !ma) continue;
    CHECK(std::abs(*mc) <= 1e-10);
    CHECK(std::abs(*ma) <= 1e-10);
  }
}

TEST_CASE("cone hinge at the apex: model angle never exceeds the true angle") {
  // Gap below pi: the hinge spans a flat wedge, so the model angle equals the
  // true angle exactly.
  ConeOracle narrow({0.0, 1.5 * kPi});
  const int apex = narrow.add_point({0.0, 0.0});
  const int x = narrow.add_point({1.0, 0.0});
  const int y = narrow.add_point({1.0, 0.75 * kPi});
  CHECK(model_angle_at(narrow, 0.0, apex, x, y).value() ==
        doctest::Approx(0.75 * kPi).epsilon(1e-12));

  // Gap above pi (wide cone): d(x,y) runs through the apex and the model
  // angle drops strictly below the true angle.
  ConeOracle wide({0.0, 3.0 * kPi});
  const int apex2 = wide.add_point({0.0, 0.0});
  const int x2 = wide.add_point({1.0, 0.0});
  const int y2 = wide.add_point({1.0, 1.4 * kPi});
  const auto model = model_angle_at(wide, 0.0, apex2, x2, y2);
  CHECK(model.value() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(model.value() < 1.4 * kPi);
}

TEST_CASE("exact cone oracles satisfy the measure-to-comparison predictions") {
  SuiteConfig cfg;
  cfg.samples = 4000;
  cfg.pool = 160;
  cfg.seed = 1;
  cfg.tolerance = 1e-9;

  SUBCASE("curvature above the bound, narrow cone: CBB") {
    for (const ConeSpec spec : {ConeSpec{1.0, 1.5 * kPi}, ConeSpec{0.0, 1.5 * kPi}}) {
      ConeOracle cone(spec);
      cfg.condition = Condition::CBB;
      cfg.kappa = spec.kappa;
      const ComparisonReport rep = run_suite(cone, cfg);
      CHECK(rep.failures == 0);
      CHECK(rep.worst_margin >= -1e-9);
      CHECK(rep.evaluated > cfg.samples / 2);
    }
  }
  SUBCASE("curvature below the bound, wide cone: CAT") {
    for (const ConeSpec spec : {ConeSpec{-1.0, 3.0 * kPi}, ConeSpec{0.0, 3.0 * kPi}}) {
      ConeOracle cone(spec);
      cfg.condition = Condition::CatGlobal;
      cfg.kappa = spec.kappa;
      const ComparisonReport rep = run_suite(cone, cfg);
      CHECK(rep.failures == 0);
      CHECK(rep.worst_margin >= -1e-9);
    }
  }
}

TEST_CASE("cube: CBB(0) suite clean over the exact solver") {
  const TriangulatedSurface cube = make_cube_surface();
  ExactSurfaceOracle oracle(cube);
  SuiteConfig cfg;
  cfg.condition = Condition::CBB;
  cfg.kappa = 0.0;
  cfg.samples = 10000;
  cfg.pool = 48;
  cfg.seed = 0;
  cfg.tolerance = 1e-6;
  const ComparisonReport rep = run_suite(oracle, cfg);
  CHECK(rep.failures == 0);
  CHECK(rep.worst_margin >= -1e-6);
  CHECK(rep.evaluated + rep.skipped == rep.attempted);
}

TEST_CASE("octagon: CBB(0) fails with witnesses, local CAT(0) passes") {
  const OctagonGenus2 oct = make_octagon_genus2(1.0);
  SUBCASE("constructed saddle quadruple violates CBB(0)") {
    ExactSurfaceOracle oracle(oct.surface);
    SuiteConfig cfg;
    cfg.condition = Condition::CBB;
    cfg.samples = 500;
    cfg.pool = 32;
    cfg.seed = 2;
    cfg.tolerance = 1e-6;
    // p essentially at the 6*pi vertex and x, y, z at link gaps of 2*pi:
    // every pairwise minimizer among x, y, z runs through the vertex, the
    // three model triangles at p degenerate, and the angle sum approaches
    // 3*pi, so the margin approaches -pi.
    std::array<int, 4> quad;
    quad[0] = oracle.add_point(point_near_vertex(oct.surface, 0, 0.01, 0.3));
    for (int k = 1; k < 4; ++k)
      quad[k] = oracle.add_point(
          point_near_vertex(oct.surface, 0, 0.25, 0.3 + (k - 1) * kTwoPi));
    cfg.extra_quadruples.push_back(quad);
    const ComparisonReport rep = run_suite(oracle, cfg);
    CHECK(rep.failures >= 1);
    CHECK(rep.worst_margin <= -2.5);
    REQUIRE(!rep.worst.empty());
    // Witness margins reproduce from their recorded distances.
    for (const Witness& w : rep.worst) {
      if (std::isnan(w.margin)) continue;
      const auto again = cbb_quadruple_margin(
          0.0, CbbDistances{w.distances[0], w.distances[1], w.distances[2], w.distances[3],
                            w.distances[4], w.distances[5]});
      if (again) CHECK(std::abs(again->margin - w.margin) <= 1e-12);
    }
  }
  SUBCASE("local CAT(0) within the declared locality radius") {
    ExactSurfaceOracle oracle(oct.surface);
    SuiteConfig cfg;
    cfg.condition = Condition::CatLocal;
    cfg.locality_radius = oct.locality_radius;
    cfg.samples = 2500;
    cfg.pool = 220;
    cfg.seed = 3;
    cfg.tolerance = 1e-6;
    const ComparisonReport rep = run_suite(oracle, cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.evaluated > 500);
  }
}

TEST_CASE("cylinder sharpness: waist hinge angle pi, global CAT(0) witness, local pass") {
  const CylinderTorus cyl = make_cylinder_torus(1.0, 10.0);
  ExactSurfaceOracle oracle(cyl.surface);
  std::array<int, 4> markers;
  for (int k = 0; k < 4; ++k) markers[k] = oracle.add_point(cyl.waist_markers[k]);

  SUBCASE("waist hinge upper angle") {
    // Hinge at marker 0 between the two neighboring markers: the geodesics
    // leave in opposite directions along the waist.
    const auto est = upper_angle_estimate(oracle, markers[0], markers[1], markers[3],
                                          default_angle_scales(oracle, markers[0], markers[1],
                                                               markers[3]));
    CHECK(est.angle == doctest::Approx(kPi).epsilon(1e-2));
    // Against the plane comparison value of an equilateral configuration the
    // excess is pi - pi/3 per corner.
    CHECK(est.angle > kPi - 1e-6);
  }

  SUBCASE("global CAT(0) fails on the waist quadruple; local CAT(0) passes") {
    SuiteConfig cfg;
    cfg.condition = Condition::CatGlobal;
    cfg.samples = 400;
    cfg.pool = 24;
    cfg.seed = 5;
    cfg.tolerance = 1e-6;
    cfg.extra_quadruples.push_back({markers[0], markers[2], markers[1], markers[3]});
    const ComparisonReport rep = run_suite(oracle, cfg);
    CHECK(rep.failures >= 1);
    CHECK(rep.worst_margin <= -0.5);

    ExactSurfaceOracle local_oracle(cyl.surface);
    SuiteConfig lcfg;
    lcfg.condition = Condition::CatLocal;
    lcfg.locality_radius = cyl.locality_radius;
    lcfg.samples = 800;
    lcfg.pool = 220;
    lcfg.seed = 6;
    lcfg.tolerance = 1e-6;
    const ComparisonReport lrep = run_suite(local_oracle, lcfg);
    CHECK(lrep.failures == 0);
    CHECK(lrep.evaluated > 100);
  }
}

TEST_CASE("point-on-side margins on singular instances") {
  SUBCASE("cube triangle around a corner: CBB mode nonnegative") {
    const TriangulatedSurface cube = make_cube_surface();
    ExactSurfaceOracle oracle(cube);
    const int p = oracle.add_point(point_near_vertex(cube, 0, 0.3, 0.1));
    const int q = oracle.add_point(point_near_vertex(cube, 0, 0.32, 0.5 * kPi));
    const int r = oracle.add_point(point_near_vertex(cube, 0, 0.28, kPi));
    for (double t : {0.25, 0.5, 0.75}) {
      const auto m = point_side_margin(oracle, 0.0, p, q, r, t, ComparisonMode::CBB);
      REQUIRE(m.has_value());
      CHECK(*m >= -1e-9);
    }
  }
  SUBCASE("octagon small triangle: CAT mode nonnegative") {
    const OctagonGenus2 oct = make_octagon_genus2(1.0);
    ExactSurfaceOracle oracle(oct.surface);
    const int p = oracle.add_point(point_near_vertex(oct.surface, 0, 0.12, 0.3));
    const int q = oracle.add_point(point_near_vertex(oct.surface, 0, 0.1, 2.2));
    const int r = oracle.add_point(point_near_vertex(oct.surface, 0, 0.14, 4.4));
    for (double t : {0.3, 0.5, 0.7}) {
      const auto m = point_side_margin(oracle, 0.0, p, q, r, t, ComparisonMode::CAT);
      REQUIRE(m.has_value());
      CHECK(*m >= -1e-9);
    }
  }
}

TEST_CASE("excess profiles") {
  SUBCASE("plane triangle: flat profile") {
    PlaneOracle plane;
    const int p = plane.add_point({0, 0});
    const int q = plane.add_point({1.1, 0.1});
    const int r = plane.add_point({0.3, 0.9});
    const ExcessProfile prof = excess_profile(plane, 0.0, p, q, r, 4);
    CHECK(std::abs(prof.mu_hat) <= 2e-3);
    CHECK(std::abs(prof.nu_hat) <= 2e-3);
    CHECK(prof.evaluated == 16);
  }
  SUBCASE("cube triangle around a corner: sup estimate reaches the atom") {
    const TriangulatedSurface cube = make_cube_surface();
    ExactSurfaceOracle oracle(cube);
    const int p = oracle.add_point(point_near_vertex(cube, 0, 0.35, 0.0));
    const int q = oracle.add_point(point_near_vertex(cube, 0, 0.35, 0.5 * kPi));
    const int r = oracle.add_point(point_near_vertex(cube, 0, 0.35, kPi));
    const ExcessProfile prof = excess_profile(oracle, 0.0, p, q, r, 5);
    CHECK(prof.mu_hat == doctest::Approx(kPi / 2).epsilon(0.05));
    CHECK(prof.nu_hat >= -2e-3);
  }
  SUBCASE("octagon triangle away from the vertex: flat") {
    const OctagonGenus2 oct = make_octagon_genus2(1.0);
    ExactSurfaceOracle oracle(oct.surface);
    // A small triangle inside face 2, away from the vertex.
    const int p = oracle.add_point(surface_point_from_bary(oct.surface, 2, 0.5, 0.25, 0.25));
    const int q = oracle.add_point(surface_point_from_bary(oct.surface, 2, 0.25, 0.5, 0.25));
    const int r = oracle.add_point(surface_point_from_bary(oct.surface, 2, 0.25, 0.25, 0.5));
    const ExcessProfile prof = excess_profile(oracle, 0.0, p, q, r, 3);
    CHECK(std::abs(prof.mu_hat) <= 2e-3);
    CHECK(std::abs(prof.nu_hat) <= 2e-3);
  }
}

TEST_CASE("adjacent hinges on cone radial geodesics sum to pi") {
  ConeOracle cone({0.0, 1.5 * kPi});
  const int x = cone.add_point({1.5, 0.8});
  const int p = cone.add_point({0.8, 0.8});
  const int z = cone.add_point({0.2, 0.8});
  const int y = cone.add_point({0.9, 1.9});
  const auto scales = default_angle_scales(cone, p, x, y);
  const auto [h1, h2] = adjacent_hinge_angles(cone, x, p, z, y, scales);
  CHECK(h1.angle + h2.angle <= kPi + 1e-6);
  CHECK(h1.angle + h2.angle == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("CBB margins are non-increasing in kappa") {
  const TriangulatedSurface cube = make_cube_surface();
  ExactSurfaceOracle oracle(cube);
  Rng rng(8);
  for (int i = 0; i < 16; ++i) oracle.sample_point(rng);
  Rng pick(9);
  for (int trial = 0; trial < 60; ++trial) {
    int q[4];
    for (int k = 0; k < 4; ++k) q[k] = static_cast<int>(pick.next_below(16));
    if (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] ||
        q[2] == q[3])
      continue;
    double prev = kTwoPi;  // margins are bounded by 2*pi
    for (double kappa : {-1.0, -0.5, -0.1, 0.0}) {
      const auto mv = cbb_quadruple_margin(oracle, kappa, q[0], q[1], q[2], q[3]);
      if (!mv) break;
      CHECK(mv->margin <= prev + 1e-12);
      prev = mv->margin;
    }
  }
}

TEST_CASE("suite determinism: same seed same report, serial equals parallel") {
  const TriangulatedSurface cube = make_cube_surface();
  SuiteConfig cfg;
  cfg.condition = Condition::CBB;
  cfg.samples = 800;
  cfg.pool = 24;
  cfg.seed = 42;
  cfg.tolerance = 1e-6;

  ExactSurfaceOracle o1(cube), o2(cube), o3(cube);
  const ComparisonReport r1 = run_suite(o1, cfg);
  const ComparisonReport r2 = run_suite(o2, cfg);
  const ComparisonReport r3 = run_suite_serial(o3, cfg);

  CHECK(r1.attempted == r2.attempted);
  CHECK(r1.evaluated == r2.evaluated);
  CHECK(r1.failures == r2.failures);
  CHECK(r1.worst_margin == r2.worst_margin);
  CHECK(r1.attempted == r3.attempted);
  CHECK(r1.evaluated == r3.evaluated);
  CHECK(r1.failures == r3.failures);
  CHECK(r1.worst_margin == r3.worst_margin);
  REQUIRE(r1.worst.size() == r3.worst.size());
  for (size_t i = 0; i < r1.worst.size(); ++i) {
    CHECK(r1.worst[i].margin == r3.worst[i].margin);
    CHECK(r1.worst[i].points == r3.worst[i].points);
  }
}
