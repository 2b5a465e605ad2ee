#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bicgeo/comparison.h"
#include "bicgeo/exact_geodesics.h"

// Geodesic triangle regions on kappa = 0 surfaces: exact enclosed area via a
// radial decomposition around the (unique) enclosed cone vertex, enclosed
// atom masses, the area-distortion residual pair, and triangle-family excess
// sums against the curvature measure.

namespace bicgeo {

struct GeodesicTriangle {
  SurfacePoint p, q, r;
  GeodesicPath pq, qr, rp;
  double side_pq = 0.0, side_qr = 0.0, side_rp = 0.0;

  double perimeter() const { return side_pq + side_qr + side_rp; }
};

GeodesicTriangle make_geodesic_triangle(const ExactGeodesicSolver& solver, const SurfacePoint& p,
                                        const SurfacePoint& q, const SurfacePoint& r);

struct RegionMeasure {
  bool ok = false;
  std::string diagnostic;     // set when the sample had to be skipped
  double area = 0.0;          // mu(T)
  double atom = 0.0;          // enclosed atom mass (0 when no vertex inside)
  VertexId enclosed = -1;     // vertex inside the region, if any
};

// Area of the region bounded by the three geodesic sides. The boundary is
// developed around each candidate cone vertex: when the radial pieces sweep
// the full cone angle the vertex is inside and the piece areas sum to mu(T)
// exactly; when no vertex is inside the region develops onto a flat triangle
// and mu(T) is its Heron area. Boundaries through a vertex, or regions not
// star-shaped around their vertex, come back with ok = false.
RegionMeasure measure_triangle_region(const ExactGeodesicSolver& solver,
                                      const GeodesicTriangle& tri);

struct AreaDistortionResidual {
  bool ok = false;
  std::string diagnostic;
  double lower = 0.0;  // mu(T) - |T^0| + omega^-(T) * ell^2 / 2   (must be >= 0)
  double upper = 0.0;  // omega^+(T) * ell^2 / 2 - (mu(T) - |T^0|) (must be >= 0)
  double ell = 0.0;
  double area = 0.0;
  double flat_area = 0.0;
  double atom = 0.0;
};

// Residual pair of the area-distortion inequality for one geodesic triangle;
// ell = 0 picks perimeter/2 (a diameter bound for the region).
AreaDistortionResidual area_distortion_check(const ExactGeodesicSolver& solver,
                                             const GeodesicTriangle& tri, double ell = 0.0);

struct ExcessEstimate {
  double total = 0.0;  // sum of measured excesses; a lower bound on omega^+(U)
  std::vector<double> per_triangle;
  double estimate_slack = 0.0;
};

// Sum of measured excesses delta(T) over a family of pairwise non-overlapping
// geodesic triangles (angles from upper_angle_estimate through the oracle).
// Throws GeometryError when an overlap is detected.
ExcessEstimate excess_estimate(ExactSurfaceOracle& oracle,
                               const std::vector<std::array<int, 3>>& triangles);

}  // namespace bicgeo
