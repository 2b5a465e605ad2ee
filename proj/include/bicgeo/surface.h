#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bicgeo/model_trig.h"
#include "bicgeo/vec2.h"

// Closed oriented surfaces built from triangles of M^2(kappa): combinatorics
// plus per-face side lengths, glued edge-to-edge. On this subclass the
// curvature measure has the exact closed form
//   omega = sum_v (2*pi - theta_v) * delta_v + kappa * mu.

namespace bicgeo {

using VertexId = int;

struct Face {
  std::array<VertexId, 3> v;   // corner vertex ids, counterclockwise
  std::array<double, 3> len;   // len[i] = length of the side opposite corner i
};

// Side i of face f: the directed edge from corner (i+1)%3 to corner (i+2)%3.
struct Slot {
  int face = -1;
  int side = -1;
  bool operator==(const Slot&) const = default;
};

struct TriangulatedSurface {
  double kappa = 0.0;
  int num_vertices = 0;
  std::vector<Face> faces;
  // gluing[f][i] = slot matched with slot (f, i). Matched slots are identified
  // head-to-tail (arclength s on one side is L - s on the mate), so a fully
  // matched gluing always yields a closed oriented surface; validation checks
  // that the vertex ids written in the faces agree with that identification.
  std::vector<std::array<Slot, 3>> gluing;

  Slot mate(const Slot& s) const { return gluing[s.face][s.side]; }
  double side_length(const Slot& s) const { return faces[s.face].len[s.side]; }
  VertexId slot_tail(const Slot& s) const { return faces[s.face].v[(s.side + 1) % 3]; }
  VertexId slot_head(const Slot& s) const { return faces[s.face].v[(s.side + 2) % 3]; }

  TriangleSides face_sides(int f) const {
    return TriangleSides{faces[f].len[0], faces[f].len[1], faces[f].len[2]};
  }
};

struct Diagnostic {
  std::string invariant;  // name of the violated invariant
  std::string detail;     // offending element
};

// Empty iff the surface satisfies all structural invariants (full matching,
// equal lengths across glued slots, per-face feasibility in M^2(kappa),
// id-consistent orientable gluing, single-cycle vertex links).
std::vector<Diagnostic> validate(const TriangulatedSurface& s);

// Corner angle at local corner i of face f.
double corner_angle(const TriangulatedSurface& s, int f, int corner);

// Total angle theta_v around every vertex (indexed by vertex id).
std::vector<double> cone_angles(const TriangulatedSurface& s);

struct CurvatureMeasure {
  struct Atom {
    VertexId vertex;
    double mass;  // 2*pi - theta_v
  };
  std::vector<Atom> atoms;
  double density = 0.0;  // coefficient of the area measure
};

// Atoms 2*pi - theta_v at vertices with theta_v != 2*pi, plus density kappa.
CurvatureMeasure curvature_measure(const TriangulatedSurface& s);

// Total area: sum of model areas of the faces.
double total_area(const TriangulatedSurface& s);

int euler_characteristic(const TriangulatedSurface& s);

// omega(S) - 2*pi*chi(S); the audit residual (should vanish).
double gauss_bonnet_residual(const TriangulatedSurface& s);

// Vertices whose atom mass reaches 2*pi. Always empty for measures coming
// from curvature_measure (theta_v > 0 forces atoms < 2*pi); kept as an
// explicit audit of the no-cusp hypothesis.
std::vector<VertexId> cusp_scan(const CurvatureMeasure& m);
std::vector<VertexId> cusp_scan(const TriangulatedSurface& s);

enum class SurfaceCertification { BICB, BICA, Both, Neither };
std::string to_string(SurfaceCertification c);

struct CertificationResult {
  SurfaceCertification certification = SurfaceCertification::Neither;
  std::string witness;  // violating vertex or the density comparison
};

// omega >= bound*mu iff kappa >= bound and all atoms >= 0 (and dually for
// omega <= bound*mu): atoms live on mu-null sets, so the set-function
// inequality splits into an atom condition and a density condition.
CertificationResult certify(const TriangulatedSurface& s, double kappa_bound);

// 1->4 split of every face with exact M^2(kappa) midpoint lengths. Preserves
// cone angles at original vertices, creates theta = 2*pi at edge midpoints,
// and preserves area and certification.
TriangulatedSurface subdivide(const TriangulatedSurface& s);

// Planar layout of a kappa = 0 face: corner 0 at the origin, corner 1 on the
// positive x axis, corner 2 in the upper half plane.
std::array<Vec2, 3> flat_layout(const Face& face);

// Corner positions of the endpoints of side i: {tail, head} = corners
// (i+1)%3, (i+2)%3 of the flat layout.
std::array<Vec2, 2> flat_side_endpoints(const Face& face, int side);

}  // namespace bicgeo
