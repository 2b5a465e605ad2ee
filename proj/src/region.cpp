#include "bicgeo/region.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bicgeo {

namespace {

struct Chord {
  int face = -1;
  Vec2 a, b;
  SurfacePoint entry;
  double len = 0.0;
};

// Boundary chords of the region, in traversal order p -> q -> r -> p.
std::vector<Chord> boundary_chords(const TriangulatedSurface& s, const GeodesicTriangle& tri) {
  std::vector<Chord> out;
  for (const GeodesicPath* path : {&tri.pq, &tri.qr, &tri.rp}) {
    for (const PathSegment& seg : path->segments) {
      if (seg.length <= 1e-13) continue;
      Chord c;
      c.face = seg.face;
      c.a = local_coords(s, seg.entry);
      c.b = local_coords(s, seg.exit);
      c.entry = seg.entry;
      c.len = seg.length;
      out.push_back(c);
    }
  }
  return out;
}

double face_scale(const TriangulatedSurface& s, int f) {
  return std::max({s.faces[f].len[0], s.faces[f].len[1], s.faces[f].len[2]});
}

bool touches_vertex(const TriangulatedSurface& s, const SurfacePoint& p) {
  const double tol = 1e-9 * std::max(1.0, face_scale(s, p.face));
  return std::min({p.corner_dist[0], p.corner_dist[1], p.corner_dist[2]}) <= tol;
}

double heron(double a, double b, double c) {
  double x = a, y = b, z = c;
  if (x < y) std::swap(x, y);
  if (y < z) std::swap(y, z);
  if (x < y) std::swap(x, y);
  const double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return t > 0.0 ? 0.25 * std::sqrt(t) : 0.0;
}

// Interior angle of the region at the meeting point of two sides, measured by
// a small flat hinge probe (exact on kappa = 0 faces away from vertices).
double corner_angle_probe(const ExactGeodesicSolver& solver, const TriangulatedSurface& s,
                          const GeodesicPath& incoming, const GeodesicPath& outgoing) {
  const double span = 0.25 * std::min(incoming.length, outgoing.length);
  const SurfacePoint x1 = point_on_geodesic(s, incoming, 1.0 - span / incoming.length);
  const SurfacePoint x2 = point_on_geodesic(s, outgoing, span / outgoing.length);
  const SurfacePoint corner = point_on_geodesic(s, outgoing, 0.0);
  const double d1 = solver.distance(corner, x1);
  const double d2 = solver.distance(corner, x2);
  const double dx = solver.distance(x1, x2);
  return model_angle(0.0, {dx, d1, d2});
}

}  // namespace

GeodesicTriangle make_geodesic_triangle(const ExactGeodesicSolver& solver, const SurfacePoint& p,
                                        const SurfacePoint& q, const SurfacePoint& r) {
  GeodesicTriangle t;
  t.p = p;
  t.q = q;
  t.r = r;
  DistanceResult pq = solver.distance_and_path(p, q);
  DistanceResult qr = solver.distance_and_path(q, r);
  DistanceResult rp = solver.distance_and_path(r, p);
  t.side_pq = pq.distance;
  t.side_qr = qr.distance;
  t.side_rp = rp.distance;
  t.pq = std::move(pq.path);
  t.qr = std::move(qr.path);
  t.rp = std::move(rp.path);
  return t;
}

RegionMeasure measure_triangle_region(const ExactGeodesicSolver& solver,
                                      const GeodesicTriangle& tri) {
  const TriangulatedSurface& s = solver.surface();
  RegionMeasure out;

  const std::vector<Chord> chords = boundary_chords(s, tri);
  if (chords.size() < 3) {
    out.diagnostic = "degenerate boundary";
    return out;
  }
  for (const Chord& c : chords) {
    if (touches_vertex(s, c.entry)) {
      out.diagnostic = "boundary passes through a vertex";
      return out;
    }
  }

  // Exact enclosed-atom audit: the boundary is geodesic, so the interior
  // angle sum minus the flat model angle sum equals the enclosed curvature.
  const double alpha = corner_angle_probe(solver, s, tri.rp, tri.pq);
  const double beta = corner_angle_probe(solver, s, tri.pq, tri.qr);
  const double gamma = corner_angle_probe(solver, s, tri.qr, tri.rp);
  const TriangleSides sides{tri.side_qr, tri.side_rp, tri.side_pq};
  if (!triangle_exists(0.0, sides)) {
    out.diagnostic = "side lengths infeasible";
    return out;
  }
  const double atom_audit = (alpha + beta + gamma) - model_angles(0.0, sides).sum();

  // Candidate enclosed vertices: vertices of faces the boundary crosses.
  std::set<VertexId> candidates;
  for (const Chord& c : chords)
    for (int k = 0; k < 3; ++k) candidates.insert(s.faces[c.face].v[k]);

  const std::vector<double> theta = cone_angles(s);
  std::vector<SurfacePoint> breakpoints;
  for (const Chord& c : chords) breakpoints.push_back(c.entry);

  for (VertexId v : candidates) {
    // Locate one corner of v to anchor the radial propagation.
    SurfacePoint vp;
    bool found = false;
    for (int f = 0; f < static_cast<int>(s.faces.size()) && !found; ++f)
      for (int c = 0; c < 3; ++c)
        if (s.faces[f].v[c] == v) {
          vp = corner_point(s, f, c);
          found = true;
          break;
        }
    const std::vector<double> radial =
        solver.distances(vp, std::span<const SurfacePoint>(breakpoints.data(), breakpoints.size()));

    double sweep = 0.0, area = 0.0;
    bool feasible = true;
    for (size_t k = 0; k < chords.size() && feasible; ++k) {
      const double d0 = radial[k];
      const double d1 = radial[(k + 1) % chords.size()];
      const TriangleSides piece{chords[k].len, d0, d1};
      if (!triangle_exists(0.0, piece) || d0 <= 1e-12 || d1 <= 1e-12) {
        feasible = false;
        break;
      }
      sweep += model_angle(0.0, piece);
      area += heron(d0, d1, chords[k].len);
    }
    if (!feasible) continue;
    if (std::abs(sweep - theta[v]) <= 1e-6) {
      if (out.enclosed >= 0) {
        out.ok = false;
        out.diagnostic = "ambiguous enclosure (two vertices claim the region)";
        return out;
      }
      out.enclosed = v;
      out.area = area;
      out.atom = kTwoPi - theta[v];
    }
  }

  if (out.enclosed < 0) {
    out.area = model_area(0.0, sides);
    out.atom = 0.0;
  }

  // The Gauss-Bonnet audit must agree with the claimed enclosure.
  if (std::abs(atom_audit - out.atom) > 1e-5) {
    out.ok = false;
    out.diagnostic = "enclosure audit mismatch (region not star-shaped or multiple atoms)";
    return out;
  }
  out.ok = true;
  return out;
}

AreaDistortionResidual area_distortion_check(const ExactGeodesicSolver& solver,
                                             const GeodesicTriangle& tri, double ell) {
  AreaDistortionResidual out;
  const RegionMeasure m = measure_triangle_region(solver, tri);
  if (!m.ok) {
    out.diagnostic = m.diagnostic;
    return out;
  }
  out.ell = ell > 0.0 ? ell : 0.5 * tri.perimeter();
  out.area = m.area;
  out.flat_area = model_area(0.0, {tri.side_qr, tri.side_rp, tri.side_pq});
  out.atom = m.atom;
  const double omega_pos = std::max(m.atom, 0.0);
  const double omega_neg = std::max(-m.atom, 0.0);
  const double diff = m.area - out.flat_area;
  out.lower = diff + 0.5 * omega_neg * out.ell * out.ell;
  out.upper = 0.5 * omega_pos * out.ell * out.ell - diff;
  out.ok = true;
  return out;
}

ExcessEstimate excess_estimate(ExactSurfaceOracle& oracle,
                               const std::vector<std::array<int, 3>>& triangles) {
  const TriangulatedSurface& s = oracle.solver().surface();
  ExcessEstimate out;

  // Overlap detection: boundary chords must not cross, and two triangles may
  // not enclose the same vertex (nested regions).
  std::vector<GeodesicTriangle> tris;
  std::vector<RegionMeasure> measures;
  for (const auto& t : triangles) {
    tris.push_back(make_geodesic_triangle(oracle.solver(), oracle.point(t[0]),
                                          oracle.point(t[1]), oracle.point(t[2])));
    measures.push_back(measure_triangle_region(oracle.solver(), tris.back()));
  }
  for (size_t i = 0; i < tris.size(); ++i) {
    for (size_t j = i + 1; j < tris.size(); ++j) {
      if (measures[i].ok && measures[j].ok && measures[i].enclosed >= 0 &&
          measures[i].enclosed == measures[j].enclosed)
        throw GeometryError("excess_estimate: triangles enclose the same vertex (overlap)");
      const auto ci = boundary_chords(s, tris[i]);
      const auto cj = boundary_chords(s, tris[j]);
      for (const Chord& a : ci) {
        for (const Chord& b : cj) {
          if (a.face != b.face) continue;
          // Proper crossing test.
          const double d1 = cross(a.b - a.a, b.a - a.a);
          const double d2 = cross(a.b - a.a, b.b - a.a);
          const double d3 = cross(b.b - b.a, a.a - b.a);
          const double d4 = cross(b.b - b.a, a.b - b.a);
          if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)))
            throw GeometryError("excess_estimate: triangle boundaries cross (overlap)");
        }
      }
    }
  }

  for (const auto& t : triangles) {
    const auto scales = default_angle_scales(oracle, t[0], t[1], t[2]);
    const AngleEstimate a = upper_angle_estimate(oracle, t[0], t[1], t[2], scales);
    const AngleEstimate b = upper_angle_estimate(
        oracle, t[1], t[2], t[0], default_angle_scales(oracle, t[1], t[2], t[0]));
    const AngleEstimate c = upper_angle_estimate(
        oracle, t[2], t[0], t[1], default_angle_scales(oracle, t[2], t[0], t[1]));
    const TriangleSides sides{oracle.distance(t[1], t[2]), oracle.distance(t[2], t[0]),
                              oracle.distance(t[0], t[1])};
    const double excess = relative_excess(0.0, {a.angle, b.angle, c.angle}, sides);
    out.per_triangle.push_back(excess);
    out.total += excess;
    out.estimate_slack = std::max({out.estimate_slack, a.last_step, b.last_step, c.last_step});
  }
  return out;
}

}  // namespace bicgeo
