#pragma once

#include <array>
#include <vector>

#include "bicgeo/rng.h"
#include "bicgeo/surface.h"

namespace bicgeo {

// A point of a face, located by its geodesic distances to the three face
// corners. The three distances are redundant (two circles meet in two points;
// the third distance picks the one inside the face), which gives a
// representation that works for every kappa and a cheap consistency check.
struct SurfacePoint {
  int face = -1;
  std::array<double, 3> corner_dist{0.0, 0.0, 0.0};
};

// kappa = 0 only: conversions between corner distances and the planar layout
// of the face (see flat_layout).
SurfacePoint surface_point_from_local(const TriangulatedSurface& s, int face, const Vec2& local);
Vec2 local_coords(const TriangulatedSurface& s, const SurfacePoint& p);

// Point with the given barycentric-style weights (w0 + w1 + w2 = 1). For
// kappa != 0 the weights are applied in the sphere/hyperboloid chart of the
// face and projected back to the surface.
SurfacePoint surface_point_from_bary(const TriangulatedSurface& s, int face, double w0, double w1,
                                     double w2);

// How far the stored third distance is from the one implied by the first two;
// a valid SurfacePoint keeps this below ~1e-9 * diameter(face).
double point_consistency_residual(const TriangulatedSurface& s, const SurfacePoint& p);

// Geodesic distance between two points of the same face, staying inside the
// face (faces are convex in M^2(kappa)).
double in_face_distance(const TriangulatedSurface& s, const SurfacePoint& p,
                        const SurfacePoint& q);

// If p lies on side `side` of its face (within tol), returns the arclength
// parameter from the side's tail; otherwise returns a negative value.
double side_parameter(const TriangulatedSurface& s, const SurfacePoint& p, int side, double tol);

// Re-expresses an on-edge point in the face glued across `side`.
SurfacePoint transfer_across(const TriangulatedSurface& s, const SurfacePoint& p, int side);

// True iff p and q denote the same surface point: same face, or matching
// positions on a shared edge (or a shared vertex).
bool points_equal(const TriangulatedSurface& s, const SurfacePoint& p, const SurfacePoint& q,
                  double tol);

// Cumulative face areas, for area-weighted sampling.
std::vector<double> face_area_cumsum(const TriangulatedSurface& s);

// Area-weighted random point (exactly uniform for kappa = 0, chart-uniform
// otherwise).
SurfacePoint sample_point(const TriangulatedSurface& s, Rng& rng,
                          const std::vector<double>& area_cumsum);

// The corner of a face as a SurfacePoint.
SurfacePoint corner_point(const TriangulatedSurface& s, int face, int corner);

}  // namespace bicgeo
