#pragma once

#include <span>
#include <vector>

#include "bicgeo/surface.h"
#include "bicgeo/surface_point.h"

// Steiner-graph upper bounds on intrinsic distances, for any kappa: auxiliary
// points placed uniformly by arclength on every edge (counts growing with
// edge length), all-pairs in-face geodesic links, shortest path over the
// graph. Point sets are nested across refinement doublings, so reported
// distances are non-increasing in the refinement level.

namespace bicgeo {

class SteinerGraph {
public:
  SteinerGraph(const TriangulatedSurface& surface, int refinement);

  const TriangulatedSurface& surface() const { return *surface_; }
  int refinement() const { return refinement_; }
  int node_count() const { return static_cast<int>(node_face_coord_.size()); }

  // Upper bound on d(p, q); never below the true distance.
  double distance(const SurfacePoint& p, const SurfacePoint& q) const;

  std::vector<double> distance_matrix(std::span<const SurfacePoint> points,
                                      bool parallel = true) const;

private:
  struct FaceCoord {
    double r = 0.0;    // distance to corner 0 of the face
    double phi = 0.0;  // angle at corner 0 from the side toward corner 1
  };

  const TriangulatedSurface* surface_;
  int refinement_;
  std::vector<std::vector<int>> face_nodes_;                  // per face, node ids
  std::vector<std::vector<std::pair<int, FaceCoord>>> node_face_coord_;  // per node
  // CSR adjacency.
  std::vector<int> adj_start_;
  std::vector<int> adj_node_;
  std::vector<double> adj_w_;

  FaceCoord coord_of(const SurfacePoint& p) const;
  double in_face(const FaceCoord& a, const FaceCoord& b) const;
  const FaceCoord* coord_in_face(int node, int face) const;

  // Dijkstra from a virtual endpoint linked into `p`'s face(s).
  std::vector<double> from_point(const SurfacePoint& p) const;
};

// Convenience wrapper: builds the graph at the given refinement and queries
// one pair.
double approx_distance(const TriangulatedSurface& surface, const SurfacePoint& p,
                       const SurfacePoint& q, int refinement);

}  // namespace bicgeo
