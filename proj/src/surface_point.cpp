#include "bicgeo/surface_point.h"

#include <algorithm>
#include <cmath>

namespace bicgeo {

namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

// Chart of a kappa != 0 face: corners embedded in the sphere (kappa > 0) or
// hyperboloid (kappa < 0) of curvature kappa, corner 0 at the pole.
struct CurvedChart {
  double kappa;
  double radius;  // 1/sqrt(|kappa|)
  std::array<Vec3, 3> corner;

  static CurvedChart make(const TriangulatedSurface& s, int f) {
    CurvedChart ch;
    ch.kappa = s.kappa;
    ch.radius = 1.0 / std::sqrt(std::abs(s.kappa));
    const double b = s.faces[f].len[1];  // corner0 -> corner2
    const double c = s.faces[f].len[2];  // corner0 -> corner1
    const double alpha = corner_angle(s, f, 0);
    const double R = ch.radius;
    if (s.kappa > 0.0) {
      ch.corner[0] = {0, 0, R};
      ch.corner[1] = {R * std::sin(c / R), 0, R * std::cos(c / R)};
      ch.corner[2] = {R * std::sin(b / R) * std::cos(alpha), R * std::sin(b / R) * std::sin(alpha),
                      R * std::cos(b / R)};
    } else {
      ch.corner[0] = {0, 0, R};
      ch.corner[1] = {R * std::sinh(c / R), 0, R * std::cosh(c / R)};
      ch.corner[2] = {R * std::sinh(b / R) * std::cos(alpha),
                      R * std::sinh(b / R) * std::sin(alpha), R * std::cosh(b / R)};
    }
    return ch;
  }

  Vec3 project(const Vec3& v) const {
    if (kappa > 0.0) {
      const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
      return v * (radius / n);
    }
    const double q = v.z * v.z - v.x * v.x - v.y * v.y;  // timelike norm
    return v * (radius / std::sqrt(q));
  }

  double distance(const Vec3& u, const Vec3& v) const {
    const double R = radius;
    if (kappa > 0.0) {
      const double d = (u.x * v.x + u.y * v.y + u.z * v.z) / (R * R);
      const double cx = u.y * v.z - u.z * v.y, cy = u.z * v.x - u.x * v.z,
                   cz = u.x * v.y - u.y * v.x;
      return R * std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz) / (R * R), d);
    }
    const double m = (u.z * v.z - u.x * v.x - u.y * v.y) / (R * R);
    return R * std::acosh(std::max(1.0, m));
  }
};

}  // namespace

SurfacePoint surface_point_from_local(const TriangulatedSurface& s, int face, const Vec2& local) {
  const auto pos = flat_layout(s.faces[face]);
  SurfacePoint p;
  p.face = face;
  for (int c = 0; c < 3; ++c) p.corner_dist[c] = dist(local, pos[c]);
  return p;
}

Vec2 local_coords(const TriangulatedSurface& s, const SurfacePoint& p) {
  const double l2 = s.faces[p.face].len[2];
  const double d0 = p.corner_dist[0], d1 = p.corner_dist[1];
  const double x = (d0 * d0 - d1 * d1 + l2 * l2) / (2.0 * l2);
  const double y2 = d0 * d0 - x * x;
  return Vec2{x, y2 > 0.0 ? std::sqrt(y2) : 0.0};
}

SurfacePoint surface_point_from_bary(const TriangulatedSurface& s, int face, double w0, double w1,
                                     double w2) {
  if (s.kappa == 0.0) {
    const auto pos = flat_layout(s.faces[face]);
    return surface_point_from_local(s, face, pos[0] * w0 + pos[1] * w1 + pos[2] * w2);
  }
  const CurvedChart ch = CurvedChart::make(s, face);
  const Vec3 v = ch.project(ch.corner[0] * w0 + ch.corner[1] * w1 + ch.corner[2] * w2);
  SurfacePoint p;
  p.face = face;
  for (int c = 0; c < 3; ++c) p.corner_dist[c] = ch.distance(v, ch.corner[c]);
  return p;
}

double point_consistency_residual(const TriangulatedSurface& s, const SurfacePoint& p) {
  if (s.kappa == 0.0) {
    const auto pos = flat_layout(s.faces[p.face]);
    const Vec2 local = local_coords(s, p);
    return std::abs(dist(local, pos[2]) - p.corner_dist[2]);
  }
  // Curved: rebuild the point from distances to corners 0,1 via the polar
  // angle at corner 0, then compare the distance to corner 2.
  const double l2 = s.faces[p.face].len[2];
  const double l1 = s.faces[p.face].len[1];
  const double phi = model_angle(s.kappa, TriangleSides{p.corner_dist[1], l2, p.corner_dist[0]});
  const double alpha0 = corner_angle(s, p.face, 0);
  const double d2 = model_side(s.kappa, p.corner_dist[0], l1, std::abs(alpha0 - phi));
  return std::abs(d2 - p.corner_dist[2]);
}

double in_face_distance(const TriangulatedSurface& s, const SurfacePoint& p,
                        const SurfacePoint& q) {
  if (s.kappa == 0.0) return dist(local_coords(s, p), local_coords(s, q));
  const double l2 = s.faces[p.face].len[2];
  const double phip = model_angle(s.kappa, TriangleSides{p.corner_dist[1], l2, p.corner_dist[0]});
  const double phiq = model_angle(s.kappa, TriangleSides{q.corner_dist[1], l2, q.corner_dist[0]});
  return model_side(s.kappa, p.corner_dist[0], q.corner_dist[0], std::abs(phip - phiq));
}

double side_parameter(const TriangulatedSurface& s, const SurfacePoint& p, int side, double tol) {
  const int tail = (side + 1) % 3, head = (side + 2) % 3;
  const double L = s.faces[p.face].len[side];
  const double dt = p.corner_dist[tail], dh = p.corner_dist[head];
  if (dt + dh > L + tol) return -1.0;
  return std::clamp(dt, 0.0, L);
}

SurfacePoint transfer_across(const TriangulatedSurface& s, const SurfacePoint& p, int side) {
  const Slot m = s.mate(Slot{p.face, side});
  const double L = s.faces[p.face].len[side];
  const double t = side_parameter(s, p, side, 1e-9 * std::max(1.0, L));
  if (t < 0.0) throw GeometryError("transfer_across: point not on the requested side");
  const double tm = s.side_length(m) - t;  // head-to-tail identification
  const int tail = (m.side + 1) % 3, head = (m.side + 2) % 3;
  SurfacePoint q;
  q.face = m.face;
  q.corner_dist[tail] = tm;
  q.corner_dist[head] = s.side_length(m) - tm;
  // Distance to the opposite corner from the hinge at the mate's tail corner.
  const double arm = s.faces[m.face].len[head];  // tail corner -> opposite corner
  q.corner_dist[m.side] = model_side(s.kappa, tm, arm, corner_angle(s, m.face, tail));
  return q;
}

bool points_equal(const TriangulatedSurface& s, const SurfacePoint& p, const SurfacePoint& q,
                  double tol) {
  auto same = [&](const SurfacePoint& a, const SurfacePoint& b) {
    return std::abs(a.corner_dist[0] - b.corner_dist[0]) <= tol &&
           std::abs(a.corner_dist[1] - b.corner_dist[1]) <= tol &&
           std::abs(a.corner_dist[2] - b.corner_dist[2]) <= tol;
  };
  if (p.face == q.face && same(p, q)) return true;
  // Points on a shared edge (or at a shared vertex) compare equal across the
  // incident faces.
  for (int side = 0; side < 3; ++side) {
    if (side_parameter(s, p, side, tol) < 0.0) continue;
    if (s.mate(Slot{p.face, side}).face != q.face) continue;
    if (same(transfer_across(s, p, side), q)) return true;
  }
  return false;
}

std::vector<double> face_area_cumsum(const TriangulatedSurface& s) {
  std::vector<double> cum(s.faces.size());
  double acc = 0.0;
  for (size_t f = 0; f < s.faces.size(); ++f) {
    acc += model_area(s.kappa, s.face_sides(static_cast<int>(f)));
    cum[f] = acc;
  }
  return cum;
}

SurfacePoint sample_point(const TriangulatedSurface& s, Rng& rng,
                          const std::vector<double>& area_cumsum) {
  const double u = rng.next_double() * area_cumsum.back();
  const int face = static_cast<int>(
      std::lower_bound(area_cumsum.begin(), area_cumsum.end(), u) - area_cumsum.begin());
  // Uniform barycentric weights.
  const double r1 = std::sqrt(rng.next_double());
  const double r2 = rng.next_double();
  return surface_point_from_bary(s, std::min(face, static_cast<int>(s.faces.size()) - 1),
                                 1.0 - r1, r1 * (1.0 - r2), r1 * r2);
}

SurfacePoint corner_point(const TriangulatedSurface& s, int face, int corner) {
  SurfacePoint p;
  p.face = face;
  p.corner_dist[corner] = 0.0;
  p.corner_dist[(corner + 1) % 3] = s.faces[face].len[(corner + 2) % 3];
  p.corner_dist[(corner + 2) % 3] = s.faces[face].len[(corner + 1) % 3];
  return p;
}

}  // namespace bicgeo
