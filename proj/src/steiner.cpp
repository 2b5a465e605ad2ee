#include "bicgeo/steiner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bicgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distances from the point at arclength `arc` (from the tail) on side i of
// face f to the three face corners.
std::array<double, 3> corner_dists_on_side(const TriangulatedSurface& s, int f, int i,
                                           double arc) {
  const int tail = (i + 1) % 3, head = (i + 2) % 3;
  const double L = s.faces[f].len[i];
  std::array<double, 3> d{};
  d[tail] = arc;
  d[head] = L - arc;
  d[i] = model_side(s.kappa, arc, s.faces[f].len[head], corner_angle(s, f, tail));
  return d;
}

std::vector<SurfacePoint> point_views(const TriangulatedSurface& s, const SurfacePoint& p) {
  std::vector<SurfacePoint> out{p};
  const double scale = std::max({s.faces[p.face].len[0], s.faces[p.face].len[1],
                                 s.faces[p.face].len[2], 1.0});
  for (int side = 0; side < 3; ++side) {
    if (side_parameter(s, p, side, 1e-10 * scale) < 0.0) continue;
    out.push_back(transfer_across(s, p, side));
  }
  return out;
}

}  // namespace

SteinerGraph::FaceCoord SteinerGraph::coord_of(const SurfacePoint& p) const {
  FaceCoord fc;
  fc.r = p.corner_dist[0];
  fc.phi = fc.r <= 0.0 ? 0.0
                       : model_angle(surface_->kappa,
                                     TriangleSides{p.corner_dist[1],
                                                   surface_->faces[p.face].len[2], fc.r});
  return fc;
}

double SteinerGraph::in_face(const FaceCoord& a, const FaceCoord& b) const {
  return model_side(surface_->kappa, a.r, b.r, std::abs(a.phi - b.phi));
}

const SteinerGraph::FaceCoord* SteinerGraph::coord_in_face(int node, int face) const {
  for (const auto& [f, fc] : node_face_coord_[node])
    if (f == face) return &fc;
  return nullptr;
}

SteinerGraph::SteinerGraph(const TriangulatedSurface& surface, int refinement)
    : surface_(&surface), refinement_(std::max(1, refinement)) {
  const int nf = static_cast<int>(surface.faces.size());
  const int nv = surface.num_vertices;
  double max_len = 0.0;
  for (const auto& f : surface.faces) max_len = std::max({max_len, f.len[0], f.len[1], f.len[2]});

  face_nodes_.assign(nf, {});
  node_face_coord_.assign(nv, {});

  auto attach = [&](int node, int face, const std::array<double, 3>& cd) {
    SurfacePoint p;
    p.face = face;
    p.corner_dist = cd;
    node_face_coord_[node].emplace_back(face, coord_of(p));
    auto& list = face_nodes_[face];
    if (list.empty() || list.back() != node) list.push_back(node);
  };

  for (int f = 0; f < nf; ++f) {
    const auto& len = surface.faces[f].len;
    attach(surface.faces[f].v[0], f, {0.0, len[2], len[1]});
    attach(surface.faces[f].v[1], f, {len[2], 0.0, len[0]});
    attach(surface.faces[f].v[2], f, {len[1], len[0], 0.0});
  }

  // Steiner nodes: dyadic fractions of each glued edge. The dyadic level
  // grows by one when the refinement doubles, so point sets are nested and
  // counts stay proportional to edge length.
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      const Slot here{f, i};
      const Slot mate = surface.mate(here);
      if (std::make_pair(mate.face, mate.side) < std::make_pair(f, i)) continue;
      const double L = surface.faces[f].len[i];
      const int level =
          static_cast<int>(std::ceil(std::log2(refinement_ * L / max_len + 1.0))) + 2;
      const int denom = 1 << level;
      for (int t = 1; t < denom; ++t) {
        const double s = L * t / denom;
        const int node = static_cast<int>(node_face_coord_.size());
        node_face_coord_.emplace_back();
        attach(node, f, corner_dists_on_side(surface, f, i, s));
        attach(node, mate.face, corner_dists_on_side(surface, mate.face, mate.side, L - s));
      }
    }
  }

  // Per-face cliques -> CSR. A vertex can sit at several corners of one face
  // (self-glued instances); the link weight takes the best coordinate pair.
  const int n = static_cast<int>(node_face_coord_.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (int f = 0; f < nf; ++f) {
    const auto& nodes = face_nodes_[f];
    for (size_t a = 0; a < nodes.size(); ++a) {
      for (size_t b = a + 1; b < nodes.size(); ++b) {
        if (nodes[a] == nodes[b]) continue;
        double w = kInf;
        for (const auto& [fa, ca] : node_face_coord_[nodes[a]]) {
          if (fa != f) continue;
          for (const auto& [fb, cb] : node_face_coord_[nodes[b]]) {
            if (fb != f) continue;
            w = std::min(w, in_face(ca, cb));
          }
        }
        adj[nodes[a]].emplace_back(nodes[b], w);
        adj[nodes[b]].emplace_back(nodes[a], w);
      }
    }
  }
  adj_start_.assign(n + 1, 0);
  for (int u = 0; u < n; ++u) adj_start_[u + 1] = adj_start_[u] + static_cast<int>(adj[u].size());
  adj_node_.resize(adj_start_[n]);
  adj_w_.resize(adj_start_[n]);
  for (int u = 0; u < n; ++u) {
    int at = adj_start_[u];
    for (const auto& [v, w] : adj[u]) {
      adj_node_[at] = v;
      adj_w_[at] = w;
      ++at;
    }
  }
}

std::vector<double> SteinerGraph::from_point(const SurfacePoint& p) const {
  const int n = static_cast<int>(node_face_coord_.size());
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;

  for (const SurfacePoint& view : point_views(*surface_, p)) {
    const FaceCoord pc = coord_of(view);
    for (int node : face_nodes_[view.face]) {
      double w = kInf;
      for (const auto& [f, fc] : node_face_coord_[node])
        if (f == view.face) w = std::min(w, in_face(pc, fc));
      if (w < dist[node]) {
        dist[node] = w;
        pq.emplace(w, node);
      }
    }
  }

  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int e = adj_start_[u]; e < adj_start_[u + 1]; ++e) {
      const double nd = d + adj_w_[e];
      if (nd < dist[adj_node_[e]]) {
        dist[adj_node_[e]] = nd;
        pq.emplace(nd, adj_node_[e]);
      }
    }
  }
  return dist;
}

double SteinerGraph::distance(const SurfacePoint& p, const SurfacePoint& q) const {
  const std::vector<double> dist = from_point(p);
  double best = kInf;
  const auto qviews = point_views(*surface_, q);
  const auto pviews = point_views(*surface_, p);
  for (const SurfacePoint& qv : qviews) {
    const FaceCoord qc = coord_of(qv);
    for (int node : face_nodes_[qv.face]) {
      for (const auto& [f, fc] : node_face_coord_[node])
        if (f == qv.face) best = std::min(best, dist[node] + in_face(fc, qc));
    }
    for (const SurfacePoint& pv : pviews)
      if (pv.face == qv.face) best = std::min(best, in_face(coord_of(pv), qc));
  }
  return best;
}

std::vector<double> SteinerGraph::distance_matrix(std::span<const SurfacePoint> points,
                                                  bool parallel) const {
  const int n = static_cast<int>(points.size());
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < n - 1; ++i) {
    const std::vector<double> dist = from_point(points[i]);
    const auto pviews = point_views(*surface_, points[i]);
    for (int j = i + 1; j < n; ++j) {
      double best = kInf;
      for (const SurfacePoint& qv : point_views(*surface_, points[j])) {
        const FaceCoord qc = coord_of(qv);
        for (int node : face_nodes_[qv.face])
          for (const auto& [f, fc] : node_face_coord_[node])
            if (f == qv.face) best = std::min(best, dist[node] + in_face(fc, qc));
        for (const SurfacePoint& pv : pviews)
          if (pv.face == qv.face) best = std::min(best, in_face(coord_of(pv), qc));
      }
      m[static_cast<size_t>(i) * n + j] = best;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      m[static_cast<size_t>(i) * n + j] = m[static_cast<size_t>(j) * n + i];
  (void)parallel;
  return m;
}

double approx_distance(const TriangulatedSurface& surface, const SurfacePoint& p,
                       const SurfacePoint& q, int refinement) {
  SteinerGraph g(surface, refinement);
  return g.distance(p, q);
}

}  // namespace bicgeo
