#include "bicgeo/surface.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bicgeo {

namespace {

constexpr double kLengthMatchTol = 1e-12;  // relative
constexpr double kAtomTol = 1e-10;         // |2*pi - theta_v| below this is smooth

std::string slot_str(const Slot& s) {
  return "(face " + std::to_string(s.face) + ", side " + std::to_string(s.side) + ")";
}

// Next corner counterclockwise around the vertex sitting at corner (f, i):
// cross the side with tail at this corner; the mate's head lands on the same
// vertex.
Slot next_corner_around_vertex(const TriangulatedSurface& s, int f, int i) {
  const Slot out{f, (i + 2) % 3};
  const Slot m = s.mate(out);
  return Slot{m.face, (m.side + 2) % 3};  // local corner index of the head
}

}  // namespace

std::vector<Diagnostic> validate(const TriangulatedSurface& s) {
  std::vector<Diagnostic> out;
  const int nf = static_cast<int>(s.faces.size());

  if (s.gluing.size() != s.faces.size()) {
    out.push_back({"gluing-size", "gluing table has " + std::to_string(s.gluing.size()) +
                                      " rows for " + std::to_string(nf) + " faces"});
    return out;
  }

  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      const VertexId v = s.faces[f].v[c];
      if (v < 0 || v >= s.num_vertices)
        out.push_back({"vertex-range", "face " + std::to_string(f) + " corner " +
                                           std::to_string(c) + " references vertex " +
                                           std::to_string(v)});
    }
    if (!triangle_exists(s.kappa, s.face_sides(f)))
      out.push_back({"face-feasibility",
                     "face " + std::to_string(f) + " sides infeasible in M^2(kappa)"});
  }
  if (!out.empty()) return out;

  // Matching: every slot matched exactly once, involutively, with equal
  // lengths and id-consistent head-to-tail identification.
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      const Slot a{f, i};
      const Slot b = s.mate(a);
      if (b.face < 0 || b.face >= nf || b.side < 0 || b.side > 2) {
        out.push_back({"gluing-matching", "slot " + slot_str(a) + " matched out of range"});
        continue;
      }
      if (!(s.mate(b) == a)) {
        out.push_back({"gluing-matching", "slot " + slot_str(a) + " match is not involutive"});
        continue;
      }
      if (b == a) {
        out.push_back({"gluing-matching", "slot " + slot_str(a) + " glued to itself"});
        continue;
      }
      const double la = s.side_length(a), lb = s.side_length(b);
      if (std::abs(la - lb) > kLengthMatchTol * std::max({la, lb, 1e-300}))
        out.push_back({"gluing-length",
                       "slots " + slot_str(a) + " and " + slot_str(b) + " carry lengths " +
                           std::to_string(la) + " vs " + std::to_string(lb)});
      // Head-to-tail identification must agree with the written vertex ids.
      if (s.slot_tail(a) != s.slot_head(b) || s.slot_head(a) != s.slot_tail(b))
        out.push_back({"gluing-orientation",
                       "slots " + slot_str(a) + " and " + slot_str(b) +
                           " do not identify head-to-tail under the written vertex ids"});
    }
  }
  if (!out.empty()) return out;

  // Vertex links: corners carrying the same vertex id must form exactly one
  // rotation orbit.
  std::vector<int> orbit(3 * nf, -1);
  int norbits = 0;
  std::vector<VertexId> orbit_vertex;
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      if (orbit[3 * f + i] >= 0) continue;
      const int id = norbits++;
      orbit_vertex.push_back(s.faces[f].v[i]);
      Slot c{f, i};
      int guard = 0;
      do {
        if (orbit[3 * c.face + c.side] >= 0) {
          out.push_back({"vertex-link", "corner rotation around face " + std::to_string(c.face) +
                                            " corner " + std::to_string(c.side) +
                                            " is not a simple cycle"});
          return out;
        }
        orbit[3 * c.face + c.side] = id;
        if (s.faces[c.face].v[c.side] != orbit_vertex[id])
          out.push_back({"vertex-link",
                         "corner orbit of vertex " + std::to_string(orbit_vertex[id]) +
                             " reaches a corner labelled " +
                             std::to_string(s.faces[c.face].v[c.side])});
        c = next_corner_around_vertex(s, c.face, c.side);
        if (++guard > 3 * nf + 1) {
          out.push_back({"vertex-link", "corner rotation did not close"});
          return out;
        }
      } while (!(c == Slot{f, i}));
    }
  }
  if (!out.empty()) return out;

  if (norbits != s.num_vertices)
    out.push_back({"vertex-link", std::to_string(norbits) + " corner orbits for " +
                                      std::to_string(s.num_vertices) + " declared vertices"});
  std::set<VertexId> seen;
  for (VertexId v : orbit_vertex) {
    if (!seen.insert(v).second)
      out.push_back({"vertex-link",
                     "vertex " + std::to_string(v) + " splits into more than one corner orbit"});
  }
  return out;
}

double corner_angle(const TriangulatedSurface& s, int f, int corner) {
  const auto& len = s.faces[f].len;
  return model_angle(
      s.kappa, TriangleSides{len[corner], len[(corner + 1) % 3], len[(corner + 2) % 3]});
}

std::vector<double> cone_angles(const TriangulatedSurface& s) {
  std::vector<double> theta(s.num_vertices, 0.0);
  for (int f = 0; f < static_cast<int>(s.faces.size()); ++f)
    for (int c = 0; c < 3; ++c) theta[s.faces[f].v[c]] += corner_angle(s, f, c);
  return theta;
}

CurvatureMeasure curvature_measure(const TriangulatedSurface& s) {
  CurvatureMeasure m;
  m.density = s.kappa;
  const std::vector<double> theta = cone_angles(s);
  for (VertexId v = 0; v < s.num_vertices; ++v) {
    const double mass = kTwoPi - theta[v];
    if (std::abs(mass) > kAtomTol) m.atoms.push_back({v, mass});
  }
  return m;
}

double total_area(const TriangulatedSurface& s) {
  double area = 0.0;
  for (int f = 0; f < static_cast<int>(s.faces.size()); ++f)
    area += model_area(s.kappa, s.face_sides(f));
  return area;
}

int euler_characteristic(const TriangulatedSurface& s) {
  const int nf = static_cast<int>(s.faces.size());
  return s.num_vertices - (3 * nf) / 2 + nf;
}

double gauss_bonnet_residual(const TriangulatedSurface& s) {
  const CurvatureMeasure m = curvature_measure(s);
  double omega = m.density * total_area(s);
  for (const auto& a : m.atoms) omega += a.mass;
  return omega - kTwoPi * euler_characteristic(s);
}

std::vector<VertexId> cusp_scan(const CurvatureMeasure& m) {
  std::vector<VertexId> out;
  for (const auto& a : m.atoms)
    if (a.mass >= kTwoPi) out.push_back(a.vertex);
  return out;
}

std::vector<VertexId> cusp_scan(const TriangulatedSurface& s) {
  return cusp_scan(curvature_measure(s));
}

std::string to_string(SurfaceCertification c) {
  switch (c) {
    case SurfaceCertification::BICB: return "BICB";
    case SurfaceCertification::BICA: return "BICA";
    case SurfaceCertification::Both: return "both";
    case SurfaceCertification::Neither: return "neither";
  }
  return "neither";
}

CertificationResult certify(const TriangulatedSurface& s, double kappa_bound) {
  const CurvatureMeasure m = curvature_measure(s);

  bool below = true, above = true;
  std::string below_witness, above_witness;
  if (m.density < kappa_bound) {
    below = false;
    below_witness = "density " + std::to_string(m.density) + " < bound";
  }
  if (m.density > kappa_bound) {
    above = false;
    above_witness = "density " + std::to_string(m.density) + " > bound";
  }
  for (const auto& a : m.atoms) {
    if (below && a.mass < 0.0) {
      below = false;
      below_witness = "vertex " + std::to_string(a.vertex) + " carries atom " +
                      std::to_string(a.mass) + " < 0";
    }
    if (above && a.mass > 0.0) {
      above = false;
      above_witness = "vertex " + std::to_string(a.vertex) + " carries atom " +
                      std::to_string(a.mass) + " > 0";
    }
  }

  if (below && above) return {SurfaceCertification::Both, ""};
  if (below) return {SurfaceCertification::BICB, above_witness};
  if (above) return {SurfaceCertification::BICA, below_witness};
  return {SurfaceCertification::Neither, below_witness + "; " + above_witness};
}

TriangulatedSurface subdivide(const TriangulatedSurface& s) {
  const int nf = static_cast<int>(s.faces.size());

  // One new vertex per glued edge pair.
  std::vector<std::array<int, 3>> mid(nf);  // mid[f][i] = midpoint vertex of side i
  int next_vertex = s.num_vertices;
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 3; ++i) mid[f][i] = -1;
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      if (mid[f][i] >= 0) continue;
      const Slot m = s.mate(Slot{f, i});
      mid[f][i] = mid[m.face][m.side] = next_vertex++;
    }
  }

  // Geodesic distance within the face between the midpoints of sides i and j:
  // hinge at the shared corner k (opposite neither i nor j), half sides and
  // the corner angle.
  auto mid_to_mid = [&](int f, int i, int j) {
    const int k = 3 - i - j;  // {i,j,k} = {0,1,2}
    return model_side(s.kappa, 0.5 * s.faces[f].len[i], 0.5 * s.faces[f].len[j],
                      corner_angle(s, f, k));
  };

  TriangulatedSurface out;
  out.kappa = s.kappa;
  out.num_vertices = next_vertex;
  out.faces.resize(4 * nf);
  out.gluing.resize(4 * nf);

  // Children of face f: index 4f + c (c = 0,1,2) is the corner triangle at
  // corner c; 4f + 3 is the middle triangle (m0, m1, m2).
  for (int f = 0; f < nf; ++f) {
    const auto& face = s.faces[f];
    for (int c = 0; c < 3; ++c) {
      // Corner triangle (v_c, m_{c+2}, m_{c+1}): side opposite v_c joins the
      // midpoints of the two sides incident to v_c.
      Face child;
      child.v = {face.v[c], mid[f][(c + 2) % 3], mid[f][(c + 1) % 3]};
      child.len[0] = mid_to_mid(f, (c + 1) % 3, (c + 2) % 3);
      child.len[1] = 0.5 * face.len[(c + 1) % 3];
      child.len[2] = 0.5 * face.len[(c + 2) % 3];
      out.faces[4 * f + c] = child;
    }
    Face middle;
    middle.v = {mid[f][0], mid[f][1], mid[f][2]};
    middle.len = {mid_to_mid(f, 1, 2), mid_to_mid(f, 2, 0), mid_to_mid(f, 0, 1)};
    out.faces[4 * f + 3] = middle;
  }

  // Internal gluing: corner triangle c's side 0 faces the middle triangle's
  // side c (both join m_{c+1} and m_{c+2} in opposite orders).
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      out.gluing[4 * f + c][0] = Slot{4 * f + 3, c};
      out.gluing[4 * f + 3][c] = Slot{4 * f + c, 0};
    }
  }

  // Boundary gluing: side i of face f is split at its midpoint. Its first
  // half (from corner i+1 to the midpoint) belongs to corner triangle (i+1)
  // as its side 2; the second half to corner triangle (i+2) as its side 1.
  // Head-to-tail matching pairs each half with the opposite half of the mate.
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      const Slot m = s.mate(Slot{f, i});
      const int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      const int n1 = (m.side + 1) % 3, n2 = (m.side + 2) % 3;
      // (f, half from corner c1) matches (m.face, half into corner n2).
      out.gluing[4 * f + c1][2] = Slot{4 * m.face + n2, 1};
      out.gluing[4 * m.face + n2][1] = Slot{4 * f + c1, 2};
      out.gluing[4 * f + c2][1] = Slot{4 * m.face + n1, 2};
      out.gluing[4 * m.face + n1][2] = Slot{4 * f + c2, 1};
    }
  }

  return out;
}

std::array<Vec2, 3> flat_layout(const Face& face) {
  const double l0 = face.len[0], l1 = face.len[1], l2 = face.len[2];
  const double x = l2 > 0.0 ? (l2 * l2 + l1 * l1 - l0 * l0) / (2.0 * l2) : 0.0;
  const double y2 = l1 * l1 - x * x;
  return {Vec2{0.0, 0.0}, Vec2{l2, 0.0}, Vec2{x, y2 > 0.0 ? std::sqrt(y2) : 0.0}};
}

std::array<Vec2, 2> flat_side_endpoints(const Face& face, int side) {
  const auto pos = flat_layout(face);
  return {pos[(side + 1) % 3], pos[(side + 2) % 3]};
}

}  // namespace bicgeo
