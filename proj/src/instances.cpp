#include "bicgeo/instances.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bicgeo {

namespace {

double dist3(const Vec3d& a, const Vec3d& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

Vec3d sub(const Vec3d& a, const Vec3d& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3d cross3(const Vec3d& a, const Vec3d& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot3(const Vec3d& a, const Vec3d& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Builds the gluing table by matching directed edges (tail, head) with their
// reverses. Requires every undirected vertex pair to appear exactly twice
// (once per direction), which holds whenever vertex ids are locally distinct.
std::vector<std::array<Slot, 3>> gluing_from_vertex_ids(const std::vector<Face>& faces) {
  std::map<std::pair<VertexId, VertexId>, Slot> directed;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    for (int i = 0; i < 3; ++i) {
      const VertexId tail = faces[f].v[(i + 1) % 3];
      const VertexId head = faces[f].v[(i + 2) % 3];
      if (!directed.emplace(std::make_pair(tail, head), Slot{f, i}).second)
        throw GeometryError("gluing_from_vertex_ids: duplicated directed edge");
    }
  }
  std::vector<std::array<Slot, 3>> gluing(faces.size());
  for (const auto& [key, slot] : directed) {
    const auto mate = directed.find({key.second, key.first});
    if (mate == directed.end())
      throw GeometryError("gluing_from_vertex_ids: unmatched edge (surface not closed)");
    gluing[slot.face][slot.side] = mate->second;
  }
  return gluing;
}

}  // namespace

TriangulatedSurface make_flat_torus(double a, double b, int nx, int ny) {
  const double dx = a / nx, dy = b / ny;
  const double diag = std::hypot(dx, dy);
  TriangulatedSurface s;
  s.kappa = 0.0;
  s.num_vertices = nx * ny;
  auto vid = [&](int i, int j) {
    return ((i % nx + nx) % nx) + nx * ((j % ny + ny) % ny);
  };
  auto fa = [&](int i, int j) { return 2 * (j * nx + i); };  // lower triangle of cell (i,j)

  s.faces.resize(2 * nx * ny);
  s.gluing.resize(2 * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      // Cell corners P00, P10, P11, P01; lower triangle (P00,P10,P11), upper
      // (P00,P11,P01).
      Face lower, upper;
      lower.v = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)};
      lower.len = {dy, diag, dx};
      upper.v = {vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)};
      upper.len = {dx, dy, diag};
      const int lf = fa(i, j), uf = lf + 1;
      s.faces[lf] = lower;
      s.faces[uf] = upper;
      // Diagonal.
      s.gluing[lf][1] = Slot{uf, 2};
      s.gluing[uf][2] = Slot{lf, 1};
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int lf = fa(i, j);
      const int right_uf = fa((i + 1) % nx, j) + 1;
      const int below_uf = fa(i, (j - 1 + ny) % ny) + 1;
      s.gluing[lf][0] = Slot{right_uf, 1};  // right edge of cell <-> left edge of next
      s.gluing[right_uf][1] = Slot{lf, 0};
      s.gluing[lf][2] = Slot{below_uf, 0};  // bottom edge <-> top edge of cell below
      s.gluing[below_uf][0] = Slot{lf, 2};
    }
  }
  return s;
}

CylinderTorus make_cylinder_torus(double a, double b) {
  if (!(b >= 10.0 * a)) throw GeometryError("cylinder torus requires b >= 10a");
  const int nx = 4;
  const int ny = std::max(1, static_cast<int>(std::lround(b / (a / nx))));
  CylinderTorus out;
  out.surface = make_flat_torus(a, b, nx, ny);
  out.waist_length = a;
  out.locality_radius = a / 4.0;
  const double dx = a / nx, dy = b / ny;
  for (int i = 0; i < 4; ++i) {
    // Strictly inside the lower triangle of cell (i, 0): local fractions
    // (0.5, 0.4) of (dx, dy).
    const int face = 2 * i;
    const Vec2 local{0.5 * dx, 0.4 * dy};
    out.waist_markers.push_back(surface_point_from_local(out.surface, face, local));
  }
  return out;
}

OctagonGenus2 make_octagon_genus2(double side) {
  // Regular octagon fanned from corner 0 into 6 triangles; all eight corners
  // are the same surface vertex.
  const auto diag = [&](int k) { return side * std::sin(k * kPi / 8.0) / std::sin(kPi / 8.0); };
  OctagonGenus2 out;
  out.side = side;
  out.locality_radius = side / 4.0;
  TriangulatedSurface& s = out.surface;
  s.kappa = 0.0;
  s.num_vertices = 1;
  s.faces.resize(6);
  s.gluing.resize(6);
  for (int k = 0; k < 6; ++k) {
    s.faces[k].v = {0, 0, 0};
    s.faces[k].len = {side, diag(k + 2), diag(k + 1)};
  }
  for (int k = 1; k < 6; ++k) {  // interior diagonals
    s.gluing[k][2] = Slot{k - 1, 1};
    s.gluing[k - 1][1] = Slot{k, 2};
  }
  // Boundary side m of the octagon lives at: m=0 -> (face0, side2),
  // m=1..6 -> (face m-1, side0), m=7 -> (face5, side1). Identified in the
  // pairs (0,2), (1,3), (4,6), (5,7) of the genus-2 gluing word.
  auto boundary = [&](int m) -> Slot {
    if (m == 0) return Slot{0, 2};
    if (m == 7) return Slot{5, 1};
    return Slot{m - 1, 0};
  };
  const int pair_with[8] = {2, 3, 0, 1, 6, 7, 4, 5};
  for (int m = 0; m < 8; ++m) {
    const Slot sa = boundary(m), sb = boundary(pair_with[m]);
    s.gluing[sa.face][sa.side] = sb;
  }
  return out;
}

SurfacePoint ConeSpindle::cap_point(double r, double phi) const {
  const double beta = theta / sectors;
  if (!(r < rim_radius * std::cos(0.5 * beta)))
    throw GeometryError("spindle cap point: radius outside the exact-cone cap");
  phi = std::fmod(phi, theta);
  if (phi < 0.0) phi += theta;
  int sector = std::min(static_cast<int>(phi / beta), sectors - 1);
  const double psi = phi - sector * beta;
  // Top face of the sector: corner 0 is the apex, corner 1 lies along phi =
  // sector*beta.
  return surface_point_from_local(surface, sector, Vec2{r * std::cos(psi), r * std::sin(psi)});
}

SurfacePoint ConeSpindle::apex() const { return corner_point(surface, 0, 0); }

ConeSpindle make_cone_spindle(double theta, double rim_radius, int sectors) {
  if (sectors < 3 || theta / sectors >= kPi)
    throw GeometryError("spindle: need at least 3 sectors with sector angle < pi");
  ConeSpindle out;
  out.theta = theta;
  out.rim_radius = rim_radius;
  out.sectors = sectors;
  const double beta = theta / sectors;
  const double chord = 2.0 * rim_radius * std::sin(0.5 * beta);

  TriangulatedSurface& s = out.surface;
  s.kappa = 0.0;
  s.num_vertices = 2 + sectors;  // apex A=0, apex B=1, rim P_i = 2+i
  s.faces.resize(2 * sectors);
  s.gluing.resize(2 * sectors);
  auto rim = [&](int i) { return 2 + ((i % sectors + sectors) % sectors); };
  for (int i = 0; i < sectors; ++i) {
    Face top;  // (A, P_i, P_{i+1})
    top.v = {0, rim(i), rim(i + 1)};
    top.len = {chord, rim_radius, rim_radius};
    s.faces[i] = top;
    Face bottom;  // (B, P_{i+1}, P_i)
    bottom.v = {1, rim(i + 1), rim(i)};
    bottom.len = {chord, rim_radius, rim_radius};
    s.faces[sectors + i] = bottom;
    // Rim edge between the two.
    s.gluing[i][0] = Slot{sectors + i, 0};
    s.gluing[sectors + i][0] = Slot{i, 0};
  }
  for (int i = 0; i < sectors; ++i) {
    const int prev = (i + sectors - 1) % sectors;
    s.gluing[i][2] = Slot{prev, 1};  // radial edge A-P_i
    s.gluing[prev][1] = Slot{i, 2};
    s.gluing[sectors + i][1] = Slot{sectors + prev, 2};  // radial edge B-P_i
    s.gluing[sectors + prev][2] = Slot{sectors + i, 1};
  }
  return out;
}

TriangulatedSurface make_sphere_icosa() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3d> v = {{-1, p, 0}, {1, p, 0},   {-1, -p, 0}, {1, -p, 0},
                          {0, -1, p}, {0, 1, p},   {0, -1, -p}, {0, 1, -p},
                          {p, 0, -1}, {p, 0, 1},   {-p, 0, -1}, {-p, 0, 1}};
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  const double side = std::atan(2.0);  // spherical edge length on the unit sphere

  TriangulatedSurface s;
  s.kappa = 1.0;
  s.num_vertices = 12;
  s.faces.resize(20);
  for (int f = 0; f < 20; ++f) {
    s.faces[f].v = {faces[f][0], faces[f][1], faces[f][2]};
    s.faces[f].len = {side, side, side};
  }
  s.gluing = gluing_from_vertex_ids(s.faces);
  (void)v;
  return s;
}

TriangulatedSurface make_convex_hull_surface(const std::vector<Vec3d>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw GeometryError("convex hull: need at least 4 points");

  double scale = 0.0;
  for (const auto& q : pts) scale = std::max({scale, std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  const double eps = 1e-10 * std::max(scale, 1.0);

  // Initial non-degenerate tetrahedron.
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if (dist3(pts[i], pts[0]) > eps) i1 = i;
  if (i1 < 0) throw GeometryError("convex hull degenerate: all points coincide");
  for (int i = 1; i < n && i2 < 0; ++i) {
    if (i == i1) continue;
    const Vec3d c = cross3(sub(pts[i1], pts[0]), sub(pts[i], pts[0]));
    if (std::sqrt(dot3(c, c)) > eps * eps) i2 = i;
  }
  if (i2 < 0) throw GeometryError("convex hull degenerate: points are collinear");
  const Vec3d nrm = cross3(sub(pts[i1], pts[0]), sub(pts[i2], pts[0]));
  for (int i = 1; i < n && i3 < 0; ++i) {
    if (i == i1 || i == i2) continue;
    if (std::abs(dot3(nrm, sub(pts[i], pts[0]))) > eps * std::sqrt(dot3(nrm, nrm))) i3 = i;
  }
  if (i3 < 0) throw GeometryError("convex hull degenerate: points are coplanar");

  struct HullFace {
    int a, b, c;
    bool alive = true;
  };
  std::vector<HullFace> hull;
  auto signed_dist = [&](const HullFace& f, const Vec3d& q) {
    const Vec3d m = cross3(sub(pts[f.b], pts[f.a]), sub(pts[f.c], pts[f.a]));
    return dot3(m, sub(q, pts[f.a])) / std::sqrt(dot3(m, m));
  };
  // Orient the starting tetrahedron outward.
  {
    HullFace f{0, i1, i2};
    if (signed_dist(f, pts[i3]) > 0.0) std::swap(f.b, f.c);
    hull.push_back(f);
    hull.push_back({f.a, f.c, i3});
    hull.push_back({f.c, f.b, i3});
    hull.push_back({f.b, f.a, i3});
  }

  for (int i = 0; i < n; ++i) {
    if (i == 0 || i == i1 || i == i2 || i == i3) continue;
    std::vector<int> visible;
    bool coplanar_touch = false;
    for (int f = 0; f < static_cast<int>(hull.size()); ++f) {
      if (!hull[f].alive) continue;
      const double d = signed_dist(hull[f], pts[i]);
      if (d > eps)
        visible.push_back(f);
      else if (d > -eps)
        coplanar_touch = true;
    }
    if (visible.empty()) continue;  // interior point
    if (coplanar_touch)
      throw GeometryError("convex hull degenerate: coplanar point configuration");
    // Horizon: directed edges of visible faces whose neighbor is hidden.
    std::set<std::pair<int, int>> visible_edges;
    for (int f : visible)
      for (auto [a, b] : {std::pair{hull[f].a, hull[f].b}, std::pair{hull[f].b, hull[f].c},
                          std::pair{hull[f].c, hull[f].a}})
        visible_edges.insert({a, b});
    for (int f : visible) hull[f].alive = false;
    for (const auto& [a, b] : visible_edges) {
      if (visible_edges.count({b, a})) continue;  // interior to the visible region
      hull.push_back({a, b, i});
    }
  }

  // Collect alive faces, reindex used vertices, extract intrinsic lengths.
  std::vector<int> remap(n, -1);
  int nv = 0;
  std::vector<Face> faces;
  for (const auto& f : hull) {
    if (!f.alive) continue;
    for (int vid : {f.a, f.b, f.c})
      if (remap[vid] < 0) remap[vid] = nv++;
    Face face;
    face.v = {remap[f.a], remap[f.b], remap[f.c]};
    face.len = {dist3(pts[f.b], pts[f.c]), dist3(pts[f.c], pts[f.a]), dist3(pts[f.a], pts[f.b])};
    faces.push_back(face);
  }

  TriangulatedSurface s;
  s.kappa = 0.0;
  s.num_vertices = nv;
  s.faces = std::move(faces);
  s.gluing = gluing_from_vertex_ids(s.faces);
  return s;
}

std::vector<Vec3d> cube_corners() {
  std::vector<Vec3d> out;
  for (int i = 0; i < 8; ++i)
    out.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                   static_cast<double>((i >> 2) & 1)});
  return out;
}

std::vector<Vec3d> random_sphere_points(int n, Rng& rng) {
  std::vector<Vec3d> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, kTwoPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

TriangulatedSurface random_hull_surface(int n, std::uint64_t seed,
                                        std::vector<std::string>* notes) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Rng rng(seed + attempt);
    try {
      return make_convex_hull_surface(random_sphere_points(n, rng));
    } catch (const GeometryError& e) {
      if (notes)
        notes->push_back("seed " + std::to_string(seed + attempt) + ": " + e.what() +
                         "; regenerating");
    }
  }
  throw GeometryError("random_hull_surface: no non-degenerate hull after 16 attempts");
}

TriangulatedSurface make_cube_surface() {
  // Unit cube boundary: each square face split along a diagonal. Faces are
  // oriented outward; lengths come from the embedding, which is then dropped.
  const auto corners = cube_corners();
  const int squares[6][4] = {
      {0, 2, 3, 1},  // z = 0, seen from below (outward -z)
      {4, 5, 7, 6},  // z = 1
      {0, 1, 5, 4},  // y = 0
      {2, 6, 7, 3},  // y = 1
      {0, 4, 6, 2},  // x = 0
      {1, 3, 7, 5},  // x = 1
  };
  std::vector<Face> faces;
  for (const auto& q : squares) {
    for (const auto& t : {std::array<int, 3>{q[0], q[1], q[2]}, std::array<int, 3>{q[0], q[2], q[3]}}) {
      Face f;
      f.v = {t[0], t[1], t[2]};
      f.len = {dist3(corners[t[1]], corners[t[2]]), dist3(corners[t[2]], corners[t[0]]),
               dist3(corners[t[0]], corners[t[1]])};
      faces.push_back(f);
    }
  }
  TriangulatedSurface s;
  s.kappa = 0.0;
  s.num_vertices = 8;
  s.faces = std::move(faces);
  s.gluing = gluing_from_vertex_ids(s.faces);
  return s;
}

}  // namespace bicgeo
