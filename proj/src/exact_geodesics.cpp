#include "bicgeo/exact_geodesics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bicgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kWindowBudget = 3'000'000;

struct Window {
  int face = -1, slot = -1;   // lives on this half-edge, pointing into `face`
  double t0 = 0.0, t1 = 0.0;  // interval, arclength from the side's tail
  Vec2 ps;                    // pseudo-source, in the face frame (outside the edge)
  double sigma = 0.0;         // distance already accumulated at the pseudo-source
  int parent = -1;            // arena index of the parent window
  int vertex_source = -1;     // vertex that emitted this chain (-1: the query source)
  Isometry2 to_parent;        // face frame -> parent/emitting face frame
  double key = 0.0;           // sigma + distance from ps to the interval
};

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b, double lo, double hi,
                              double len) {
  const Vec2 e = (b - a) / len;
  const double s = std::clamp(dot(p - a, e), lo, hi);
  return dist(p, a + e * s);
}

// Intersection of segment p->x with the line through a directed side (a, e
// unit, length L): returns (lambda along p->x, s along the side).
bool segment_side_intersection(const Vec2& p, const Vec2& x, const Vec2& a, const Vec2& b,
                               double* lambda, double* s) {
  const Vec2 d = x - p, e = b - a;
  const double den = cross(d, e);
  const double scale = norm(d) * norm(e);
  if (std::abs(den) <= 1e-16 * scale) return false;
  *lambda = cross(a - p, e) / den;
  const Vec2 hit = p + d * (*lambda);
  *s = dot(hit - a, e) / norm(e);
  return true;
}

struct TargetCand {
  double d = kInf;
  int kind = -1;  // 0 direct, 1 window, 2 corner/vertex-relay
  int tview = -1;
  int view = -1;
  int window = -1;
  int vertex = -1;
  int corner_face = -1, corner = -1;
};

struct VertexReach {
  double d = kInf;
  int kind = -1;  // 0 direct from source view, 1 window endpoint, 2 run source
  int view = -1, corner = -1;
  int window = -1, endpoint = 0;  // endpoint: 0 = tail (t=0), 1 = head (t=L)
};

}  // namespace

struct PropagationRun {
  const ExactGeodesicSolver& S;
  const TriangulatedSurface& surf;
  bool want_paths = false;

  struct View {
    int face;
    Vec2 pos;
  };
  std::vector<View> source_views;
  int source_vertex = -1;

  struct TView {
    int target;
    int face;
    Vec2 pos;
  };
  std::vector<TView> tviews;
  std::vector<std::vector<int>> tviews_on_face;
  std::vector<int> target_vertex;  // >= 0 when the target sits on a vertex
  std::vector<TargetCand> winner;

  std::vector<Window> arena;
  std::vector<std::vector<int>> windows_on;
  std::vector<double> vdist;
  std::vector<VertexReach> vreach;
  std::vector<char> vsettled;

  // min-heap of (key, order, kind(0 window,1 vertex), index)
  using Item = std::tuple<double, std::uint64_t, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  std::uint64_t order = 0;

  explicit PropagationRun(const ExactGeodesicSolver& solver)
      : S(solver), surf(solver.surface()) {
    const int nf = static_cast<int>(surf.faces.size());
    windows_on.assign(3 * nf, {});
    tviews_on_face.assign(nf, {});
    vdist.assign(surf.num_vertices, kInf);
    vreach.assign(surf.num_vertices, {});
    vsettled.assign(surf.num_vertices, 0);
  }

  double face_scale(int f) const {
    const auto& l = surf.faces[f].len;
    return std::max({l[0], l[1], l[2]});
  }

  int vertex_of_point(const SurfacePoint& p) const {
    const double tol = 1e-12 * std::max(1.0, face_scale(p.face));
    for (int c = 0; c < 3; ++c)
      if (p.corner_dist[c] <= tol) return surf.faces[p.face].v[c];
    return -1;
  }

  std::vector<std::pair<int, Vec2>> views_of(const SurfacePoint& p) const {
    std::vector<std::pair<int, Vec2>> out;
    out.emplace_back(p.face, local_coords(surf, p));
    for (int side = 0; side < 3; ++side) {
      const double tol = 1e-10 * std::max(1.0, face_scale(p.face));
      if (side_parameter(surf, p, side, tol) < 0.0) continue;
      const SurfacePoint q = transfer_across(surf, p, side);
      out.emplace_back(q.face, local_coords(surf, q));
    }
    return out;
  }

  // ---- candidate bookkeeping -------------------------------------------

  void offer_vertex(VertexId v, double d, const VertexReach& how) {
    if (d >= vdist[v] - 1e-15) return;
    vdist[v] = d;
    vreach[v] = how;
    vreach[v].d = d;
    pq.emplace(d, order++, 1, v);
  }

  void offer_target(int tv_index, double d, TargetCand cand) {
    const TView& tv = tviews[tv_index];
    TargetCand& best = winner[tv.target];
    cand.tview = tv_index;
    cand.d = d;
    if (d < best.d) {
      best = cand;
    } else if (d <= best.d + 1e-12 && best.kind == 1 && cand.kind == 1 &&
               arena[cand.window].face < arena[best.window].face) {
      // Equal-distance tie: prefer the lexicographically smaller face id.
      best = cand;
    }
  }

  // Candidates for every target view in face `face` served by window w.
  void offer_targets_through_window(int windex) {
    const Window& w = arena[windex];
    const auto& idxs = tviews_on_face[w.face];
    if (idxs.empty()) return;
    const auto ends = flat_side_endpoints(surf.faces[w.face], w.slot);
    const double L = surf.faces[w.face].len[w.slot];
    for (int tvi : idxs) {
      const TView& tv = tviews[tvi];
      double lambda, s;
      if (!segment_side_intersection(w.ps, tv.pos, ends[0], ends[1], &lambda, &s)) continue;
      if (lambda < 1e-14 || lambda > 1.0 + 1e-12) continue;
      if (s < w.t0 - 1e-12 * L || s > w.t1 + 1e-12 * L) continue;
      TargetCand c;
      c.kind = 1;
      c.window = windex;
      offer_target(tvi, w.sigma + dist(w.ps, tv.pos), c);
    }
  }

  void offer_targets_through_corner(VertexId v) {
    for (const auto& [f, c] : S.corners_[v]) {
      for (int tvi : tviews_on_face[f]) {
        const TView& tv = tviews[tvi];
        TargetCand cand;
        cand.kind = 2;
        cand.vertex = v;
        cand.corner_face = f;
        cand.corner = c;
        offer_target(tvi, vdist[v] + dist(S.layout_[f][c], tv.pos), cand);
      }
    }
  }

  // ---- window machinery -------------------------------------------------

  bool dominated(const Window& w) const {
    const auto ends = flat_side_endpoints(surf.faces[w.face], w.slot);
    const double L = surf.faces[w.face].len[w.slot];
    const Vec2 e = (ends[1] - ends[0]) / L;
    const Vec2 q0 = ends[0] + e * w.t0, q1 = ends[0] + e * w.t1;
    const double dmin = w.key - w.sigma;
    for (int j : windows_on[3 * w.face + w.slot]) {
      const Window& o = arena[j];
      if (o.t0 > w.t0 + 1e-14 * L || o.t1 < w.t1 - 1e-14 * L) continue;
      const double omax = o.sigma + std::max(dist(o.ps, q0), dist(o.ps, q1));
      if (omax <= w.sigma + dmin + 1e-15) return true;
    }
    return false;
  }

  void push_window(Window w, double parent_key) {
    const double L = surf.faces[w.face].len[w.slot];
    const auto ends = flat_side_endpoints(surf.faces[w.face], w.slot);
    w.key = w.sigma + point_segment_distance(w.ps, ends[0], ends[1], w.t0, w.t1, L);
    // Keys are nondecreasing along real window chains; a child claiming to be
    // closer than its parent is numerical debris from a degenerate cone.
    if (w.key < parent_key - 1e-12 * (1.0 + parent_key)) return;
    if (dominated(w)) return;
    if (arena.size() >= kWindowBudget)
      throw GeometryError("exact geodesic solver: window budget exceeded");
    const int index = static_cast<int>(arena.size());
    arena.push_back(w);
    windows_on[3 * w.face + w.slot].push_back(index);
    pq.emplace(w.key, order++, 0, index);

    // Interval endpoints touching the side's endpoints update vertex labels.
    const double epsv = 1e-12 * std::max(1.0, L);
    if (w.t0 <= epsv) {
      VertexReach r;
      r.kind = 1;
      r.window = index;
      r.endpoint = 0;
      offer_vertex(surf.slot_tail(Slot{w.face, w.slot}), w.sigma + dist(w.ps, ends[0]), r);
    }
    if (w.t1 >= L - epsv) {
      VertexReach r;
      r.kind = 1;
      r.window = index;
      r.endpoint = 1;
      offer_vertex(surf.slot_head(Slot{w.face, w.slot}), w.sigma + dist(w.ps, ends[1]), r);
    }
    offer_targets_through_window(index);
  }

  // Window entering face `from` across its side j, with pseudo-source ps (in
  // `from`'s frame) restricted to the sub-interval [u0, u1] of side j.
  void emit_across(int from, int j, const Vec2& ps, double sigma, double u0, double u1,
                   int parent, int vertex_source, double parent_key) {
    const Slot mate = surf.mate(Slot{from, j});
    const double Lm = surf.side_length(mate);
    Window w;
    w.face = mate.face;
    w.slot = mate.side;
    w.t0 = std::max(0.0, Lm - u1);
    w.t1 = std::min(Lm, Lm - u0);
    // Corner-grazing slivers carry no paths of their own (their directions
    // are covered inclusively by the neighboring windows and by the vertex
    // relays), and degenerate cones breed numerical garbage.
    if (w.t1 - w.t0 <= 1e-11 * Lm) return;
    w.ps = S.to_neighbor_[from][j](ps);
    w.sigma = sigma;
    w.parent = parent;
    w.vertex_source = vertex_source;
    w.to_parent = S.to_neighbor_[from][j].inverse();
    push_window(w, parent_key);
  }

  void propagate(int windex) {
    // Copy: arena may reallocate while children are pushed.
    const Window w = arena[windex];
    const auto& face = surf.faces[w.face];
    const auto ends = flat_side_endpoints(face, w.slot);
    const double L = face.len[w.slot];
    const Vec2 e = (ends[1] - ends[0]) / L;
    Vec2 w0 = ends[0] + e * w.t0;
    Vec2 w1 = ends[0] + e * w.t1;
    if (cross(w0 - w.ps, w1 - w.ps) < 0.0) std::swap(w0, w1);
    const double sliver = cross(w0 - w.ps, w1 - w.ps);
    if (sliver <= 1e-12 * norm(w0 - w.ps) * norm(w1 - w.ps)) return;

    for (int j = 0; j < 3; ++j) {
      if (j == w.slot) continue;
      const auto side = flat_side_endpoints(face, j);
      const double Lj = face.len[j];
      double lo = 0.0, hi = Lj;
      // Q(u) inside the cone w0 -> w1 seen from ps: two linear constraints.
      const Vec2 r1 = w1 - w.ps, r0 = w0 - w.ps;
      const Vec2 dQ = (side[1] - side[0]) / Lj;
      struct Lin {
        double alpha, beta, tol;
      };
      const Lin cons[2] = {
          {cross(side[0] - w.ps, r1), cross(dQ, r1), 1e-12 * norm(r1) * std::max(1.0, Lj)},
          {cross(r0, side[0] - w.ps), cross(r0, dQ), 1e-12 * norm(r0) * std::max(1.0, Lj)},
      };
      bool empty = false;
      for (const Lin& cn : cons) {
        // Constraint alpha + beta*u >= -tol.
        if (std::abs(cn.beta) * Lj <= 1e-15 * std::max(std::abs(cn.alpha), cn.tol)) {
          if (cn.alpha < -cn.tol) empty = true;
          continue;
        }
        const double u = (-cn.tol - cn.alpha) / cn.beta;
        if (cn.beta > 0.0)
          lo = std::max(lo, u);
        else
          hi = std::min(hi, u);
      }
      if (empty || hi - lo <= 1e-13 * Lj) continue;
      emit_across(w.face, j, w.ps, w.sigma, lo, hi, windex, w.vertex_source, w.key);
    }
  }

  void emit_from_vertex(VertexId v, double sigma, int vertex_source) {
    for (const auto& [f, c] : S.corners_[v]) {
      // Exit through the side opposite the corner; the whole side is visible.
      const double Lj = surf.faces[f].len[c];
      emit_across(f, c, S.layout_[f][c], sigma, 0.0, Lj, -1, vertex_source, sigma);
    }
  }

  void settle_vertex(VertexId v) {
    if (vsettled[v]) return;
    vsettled[v] = 1;
    const bool relay = S.theta_[v] >= kTwoPi - 1e-9 || v == source_vertex;
    if (relay) {
      emit_from_vertex(v, vdist[v], v);
      offer_targets_through_corner(v);
    }
  }

  // ---- setup ------------------------------------------------------------

  void add_targets(std::span<const SurfacePoint> targets) {
    winner.assign(targets.size(), {});
    target_vertex.assign(targets.size(), -1);
    for (int t = 0; t < static_cast<int>(targets.size()); ++t) {
      const int v = vertex_of_point(targets[t]);
      if (v >= 0) {
        target_vertex[t] = v;
        continue;
      }
      for (const auto& [f, pos] : views_of(targets[t])) {
        tviews.push_back({t, f, pos});
        tviews_on_face[f].push_back(static_cast<int>(tviews.size()) - 1);
      }
    }
  }

  void add_source(const SurfacePoint& source) {
    source_vertex = vertex_of_point(source);
    if (source_vertex >= 0) {
      vdist[source_vertex] = 0.0;
      vreach[source_vertex] = VertexReach{0.0, 2, -1, -1, -1, 0};
      pq.emplace(0.0, order++, 1, source_vertex);
      return;
    }
    for (const auto& [f, pos] : views_of(source)) {
      const int view = static_cast<int>(source_views.size());
      source_views.push_back({f, pos});
      for (int j = 0; j < 3; ++j)
        emit_across(f, j, pos, 0.0, 0.0, surf.faces[f].len[j], -1, -1, 0.0);
      for (int c = 0; c < 3; ++c) {
        VertexReach r;
        r.kind = 0;
        r.view = view;
        r.corner = c;
        offer_vertex(surf.faces[f].v[c], dist(pos, S.layout_[f][c]), r);
      }
      for (int tvi : tviews_on_face[f]) {
        TargetCand c;
        c.kind = 0;
        c.view = view;
        offer_target(tvi, dist(pos, tviews[tvi].pos), c);
      }
    }
  }

  // ---- main loop ----------------------------------------------------------

  double horizon() const {
    double h = 0.0;
    for (size_t t = 0; t < winner.size(); ++t) {
      const double b = target_vertex[t] >= 0 ? vdist[target_vertex[t]] : winner[t].d;
      if (b == kInf) return kInf;
      h = std::max(h, b);
    }
    return h;
  }

  void run() {
    double hz = horizon();
    int since_refresh = 0;
    while (!pq.empty()) {
      const auto [key, ord, kind, idx] = pq.top();
      if (hz != kInf && key > hz + 1e-12 * (1.0 + hz)) break;
      pq.pop();
      if (kind == 1) {
        if (key > vdist[idx] + 1e-15) continue;  // stale
        settle_vertex(idx);
        hz = horizon();
        continue;
      }
      propagate(idx);
      if (++since_refresh >= 16) {
        since_refresh = 0;
        hz = horizon();
      }
    }
  }

  // ---- path reconstruction ----------------------------------------------

  void append_segment(GeodesicPath& path, int face, const Vec2& a, const Vec2& b) const {
    PathSegment seg;
    seg.face = face;
    seg.entry = surface_point_from_local(surf, face, a);
    seg.exit = surface_point_from_local(surf, face, b);
    seg.length = dist(a, b);
    path.segments.push_back(seg);
  }

  // Path from the source to the point `x` (frame of `face`) served by window
  // chain `windex`; segments appended in reverse order.
  void walk_window_chain(std::vector<PathSegment>& rev, int windex, int face, Vec2 x,
                         int depth) const {
    const Window* w = &arena[windex];
    Vec2 cur = x;
    while (true) {
      const auto ends = flat_side_endpoints(surf.faces[w->face], w->slot);
      const double L = surf.faces[w->face].len[w->slot];
      double lambda, s;
      if (!segment_side_intersection(w->ps, cur, ends[0], ends[1], &lambda, &s)) s = w->t0;
      s = std::clamp(s, w->t0, w->t1);
      const Vec2 hit = ends[0] + (ends[1] - ends[0]) * (s / L);
      PathSegment seg;
      seg.face = w->face;
      seg.entry = surface_point_from_local(surf, w->face, hit);
      seg.exit = surface_point_from_local(surf, w->face, cur);
      seg.length = dist(hit, cur);
      rev.push_back(seg);
      const Vec2 next = w->to_parent(hit);
      if (w->parent >= 0) {
        cur = next;
        w = &arena[w->parent];
        continue;
      }
      const int origin_face = surf.mate(Slot{w->face, w->slot}).face;
      const Vec2 origin = w->to_parent(w->ps);
      PathSegment first;
      first.face = origin_face;
      first.entry = surface_point_from_local(surf, origin_face, origin);
      first.exit = surface_point_from_local(surf, origin_face, next);
      first.length = dist(origin, next);
      rev.push_back(first);
      if (w->vertex_source >= 0 && depth < 64) {
        append_vertex_path(rev, w->vertex_source, depth + 1);
      }
      return;
    }
    (void)face;
  }

  void append_vertex_path(std::vector<PathSegment>& rev, VertexId v, int depth) const {
    const VertexReach& r = vreach[v];
    if (r.kind == 2 || depth >= 64) return;  // the run source itself
    if (r.kind == 0) {
      const View& view = source_views[r.view];
      PathSegment seg;
      seg.face = view.face;
      seg.entry = surface_point_from_local(surf, view.face, view.pos);
      seg.exit = surface_point_from_local(surf, view.face, S.layout_[view.face][r.corner]);
      seg.length = dist(view.pos, S.layout_[view.face][r.corner]);
      rev.push_back(seg);
      return;
    }
    const Window& w = arena[r.window];
    const auto ends = flat_side_endpoints(surf.faces[w.face], w.slot);
    const Vec2 x = r.endpoint == 0 ? ends[0] : ends[1];
    walk_window_chain(rev, r.window, w.face, x, depth + 1);
  }

  GeodesicPath build_path(int t, const SurfacePoint& source, const SurfacePoint& target) const {
    GeodesicPath path;
    std::vector<PathSegment> rev;
    if (target_vertex[t] >= 0) {
      append_vertex_path(rev, target_vertex[t], 0);
    } else {
      const TargetCand& c = winner[t];
      const Vec2 tpos = c.tview >= 0 ? tviews[c.tview].pos : Vec2{};
      if (c.kind == 0) {
        const View& view = source_views[c.view];
        append_segment(path, view.face, view.pos, tpos);
        path.length = path.segments.back().length;
        return path;
      }
      if (c.kind == 2) {
        PathSegment seg;
        seg.face = c.corner_face;
        seg.entry =
            surface_point_from_local(surf, c.corner_face, S.layout_[c.corner_face][c.corner]);
        seg.exit = surface_point_from_local(surf, c.corner_face, tpos);
        seg.length = dist(S.layout_[c.corner_face][c.corner], tpos);
        rev.push_back(seg);
        append_vertex_path(rev, c.vertex, 0);
      } else if (c.kind == 1) {
        walk_window_chain(rev, c.window, arena[c.window].face, tpos, 0);
      }
    }
    std::reverse(rev.begin(), rev.end());
    path.segments = std::move(rev);
    if (path.segments.empty()) {
      // Source and target coincide (or target is the source vertex).
      append_segment(path, source.face, local_coords(surf, source), local_coords(surf, source));
    }
    path.length = 0.0;
    for (const auto& seg : path.segments) path.length += seg.length;
    (void)target;
    return path;
  }

  double result(int t) const {
    return target_vertex[t] >= 0 ? vdist[target_vertex[t]] : winner[t].d;
  }
};

ExactGeodesicSolver::ExactGeodesicSolver(const TriangulatedSurface& surface)
    : surface_(&surface) {
  if (surface.kappa != 0.0)
    throw GeometryError(
        "exact geodesic solver supports kappa = 0 only; use the Steiner-graph "
        "solver for curved surfaces");
  const int nf = static_cast<int>(surface.faces.size());
  layout_.resize(nf);
  to_neighbor_.resize(nf);
  for (int f = 0; f < nf; ++f) layout_[f] = flat_layout(surface.faces[f]);
  for (int f = 0; f < nf; ++f) {
    for (int j = 0; j < 3; ++j) {
      const Slot m = surface.mate(Slot{f, j});
      const auto a = flat_side_endpoints(surface.faces[f], j);
      const auto b = flat_side_endpoints(surface.faces[m.face], m.side);
      to_neighbor_[f][j] = align_segments(a[0], a[1], b[1], b[0]);
    }
  }
  theta_ = cone_angles(surface);
  corners_.assign(surface.num_vertices, {});
  for (int f = 0; f < nf; ++f)
    for (int c = 0; c < 3; ++c) corners_[surface.faces[f].v[c]].emplace_back(f, c);
}

std::vector<double> ExactGeodesicSolver::distances(const SurfacePoint& source,
                                                   std::span<const SurfacePoint> targets) const {
  PropagationRun run(*this);
  run.add_targets(targets);
  run.add_source(source);
  run.run();
  std::vector<double> out(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) out[t] = run.result(static_cast<int>(t));
  return out;
}

double ExactGeodesicSolver::distance(const SurfacePoint& source,
                                     const SurfacePoint& target) const {
  const SurfacePoint t[1] = {target};
  return distances(source, t)[0];
}

DistanceResult ExactGeodesicSolver::distance_and_path(const SurfacePoint& source,
                                                      const SurfacePoint& target) const {
  PropagationRun run(*this);
  run.want_paths = true;
  const SurfacePoint t[1] = {target};
  run.add_targets(std::span<const SurfacePoint>(t, 1));
  run.add_source(source);
  run.run();
  DistanceResult res;
  res.distance = run.result(0);
  res.path = run.build_path(0, source, target);
  return res;
}

std::vector<double> ExactGeodesicSolver::distance_matrix(std::span<const SurfacePoint> points,
                                                         bool parallel) const {
  const int n = static_cast<int>(points.size());
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < n - 1; ++i) {
    const auto row =
        distances(points[i], std::span<const SurfacePoint>(points.data() + i + 1, n - i - 1));
    for (int j = i + 1; j < n; ++j) m[static_cast<size_t>(i) * n + j] = row[j - i - 1];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m[static_cast<size_t>(i) * n + j] = m[static_cast<size_t>(j) * n + i];
  (void)parallel;
  return m;
}

SurfacePoint point_on_geodesic(const TriangulatedSurface& s, const GeodesicPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw GeometryError("point_on_geodesic: parameter outside [0, 1]");
  if (path.segments.empty()) throw GeometryError("point_on_geodesic: empty path");
  if (t == 0.0) return path.segments.front().entry;
  if (t == 1.0) return path.segments.back().exit;
  double want = t * path.length;
  for (const auto& seg : path.segments) {
    if (want <= seg.length || &seg == &path.segments.back()) {
      if (seg.length <= 0.0) return seg.entry;
      const double u = std::clamp(want / seg.length, 0.0, 1.0);
      const Vec2 a = local_coords(s, seg.entry), b = local_coords(s, seg.exit);
      return surface_point_from_local(s, seg.face, a + (b - a) * u);
    }
    want -= seg.length;
  }
  return path.segments.back().exit;
}

}  // namespace bicgeo
