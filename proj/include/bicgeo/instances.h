#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bicgeo/rng.h"
#include "bicgeo/surface.h"
#include "bicgeo/surface_point.h"

// Deterministic instance builders: the concrete surfaces the test suites and
// the CLI run on. All builders return surfaces that pass validate() and have
// vanishing Gauss-Bonnet residual; 3D embeddings, where used, are discarded
// after the intrinsic edge lengths are extracted.

namespace bicgeo {

struct Vec3d {
  double x = 0, y = 0, z = 0;
};

// Flat torus: an a x b rectangle glued side-to-side, as an nx x ny grid of
// square cells (two triangles each).
TriangulatedSurface make_flat_torus(double a = 1.0, double b = 1.0, int nx = 1, int ny = 1);

// Long flat torus (b >= 10a) with four marker points equally spaced around a
// waist circle; the markers realize the quadruple on which global CAT(0)
// fails while the local test passes.
struct CylinderTorus {
  TriangulatedSurface surface;
  double waist_length = 0.0;                // a
  double locality_radius = 0.0;             // a/4
  std::vector<SurfacePoint> waist_markers;  // 4 points, spacing a/4 on a waist circle
};
CylinderTorus make_cylinder_torus(double a, double b);

// Regular flat octagon with the standard genus-2 side identification: one
// vertex of total angle 6*pi, Euler characteristic -2.
struct OctagonGenus2 {
  TriangulatedSurface surface;
  double side = 0.0;
  double locality_radius = 0.0;  // side/4 (the sides are closed geodesics)
};
OctagonGenus2 make_octagon_genus2(double side = 1.0);

// Flat double cone ("spindle"): two apexes of total angle theta joined by a
// rim polygon at radius rim_radius, built from 2*sectors flat triangles. The
// polar cap around the top apex is isometric to the theta-cone up to radius
// rim_radius*cos(theta/(2*sectors)), which makes the closed-form cone
// distances an exact oracle for the mesh solver there.
struct ConeSpindle {
  TriangulatedSurface surface;
  double theta = 0.0;
  double rim_radius = 0.0;
  int sectors = 0;

  // Point at polar coordinates (r, phi) around the top apex; requires
  // r < rim_radius * cos(theta / (2*sectors)).
  SurfacePoint cap_point(double r, double phi) const;
  SurfacePoint apex() const;  // the top apex (vertex 0)
};
ConeSpindle make_cone_spindle(double theta, double rim_radius, int sectors);

// kappa = 1 surface made of the 20 spherical faces of a regular icosahedron
// with exact spherical side lengths: intrinsically the round unit sphere
// (every cone angle is exactly 2*pi).
TriangulatedSurface make_sphere_icosa();

// Intrinsic boundary surface of the convex hull of the given points.
// Throws GeometryError when the points are degenerate (coplanar).
TriangulatedSurface make_convex_hull_surface(const std::vector<Vec3d>& points);

std::vector<Vec3d> cube_corners();  // unit cube

// n points uniform on the unit sphere.
std::vector<Vec3d> random_sphere_points(int n, Rng& rng);

// Hull surface of n random sphere points; retries with the next seed on a
// degenerate hull (returns the diagnostic trail in *notes if given).
TriangulatedSurface random_hull_surface(int n, std::uint64_t seed,
                                        std::vector<std::string>* notes = nullptr);

// The unit cube boundary (12 right isoceles triangles, 8 atoms of pi/2).
TriangulatedSurface make_cube_surface();

}  // namespace bicgeo
