#pragma once

#include <span>
#include <vector>

#include "bicgeo/surface.h"
#include "bicgeo/surface_point.h"

// Exact intrinsic distances and geodesic polylines on kappa = 0 surfaces:
// continuous-Dijkstra propagation of distance windows over planar unfoldings.
// Windows are never trimmed against each other (every created window is a
// genuine family of paths, so keeping extras can only cost time, not
// correctness); growth is controlled by an upper-bound stopping rule plus a
// conservative dominance filter. Geodesics never pass through a vertex with
// theta < 2*pi except at endpoints; vertices with theta >= 2*pi re-emit
// windows once settled, which realizes the through-vertex candidates
// d(p,v) + d(v,q).

namespace bicgeo {

struct PathSegment {
  int face = -1;
  SurfacePoint entry;  // source point or the point where the path enters the face
  SurfacePoint exit;   // target point or the point where it leaves
  double length = 0.0;
};

struct GeodesicPath {
  std::vector<PathSegment> segments;
  double length = 0.0;
};

struct DistanceResult {
  double distance = 0.0;
  GeodesicPath path;
};

class ExactGeodesicSolver {
public:
  // Requires kappa = 0 (use SteinerGraph for curved surfaces) and a surface
  // that passes validate().
  explicit ExactGeodesicSolver(const TriangulatedSurface& surface);

  const TriangulatedSurface& surface() const { return *surface_; }

  double distance(const SurfacePoint& source, const SurfacePoint& target) const;
  DistanceResult distance_and_path(const SurfacePoint& source, const SurfacePoint& target) const;

  // One propagation shared by many targets.
  std::vector<double> distances(const SurfacePoint& source,
                                std::span<const SurfacePoint> targets) const;

  // Pairwise distance matrix (row-major n x n); rows are independent
  // propagations and run in parallel.
  std::vector<double> distance_matrix(std::span<const SurfacePoint> points,
                                      bool parallel = true) const;

private:
  const TriangulatedSurface* surface_;
  std::vector<std::array<Vec2, 3>> layout_;              // per-face corner positions
  std::vector<std::array<Isometry2, 3>> to_neighbor_;    // unfold across side j
  std::vector<double> theta_;                            // cone angles
  std::vector<std::vector<std::pair<int, int>>> corners_;  // vertex -> (face, corner)

  friend struct PropagationRun;
};

// Arclength-parameterized point of a path; t in [0, 1], exact endpoints at
// t = 0 and t = 1.
SurfacePoint point_on_geodesic(const TriangulatedSurface& s, const GeodesicPath& path, double t);

}  // namespace bicgeo
