#pragma once

#include <limits>
#include <stdexcept>
#include <string>

// Trigonometry of the constant-curvature plane M^2(kappa): model triangles,
// model angles, model areas, diameters and relative excesses. Everything here
// is a pure function of side lengths and kappa; all angles are radians.

namespace bicgeo {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

// Thrown when an operation is asked for a configuration that does not exist
// in M^2(kappa); the message names the violated condition.
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

struct TriangleSides {
  double a = 0.0;  // side opposite the first vertex
  double b = 0.0;
  double c = 0.0;
};

struct ModelAngles {
  double alpha = 0.0;  // angle at the vertex opposite side a
  double beta = 0.0;
  double gamma = 0.0;

  double sum() const { return alpha + beta + gamma; }
};

// Diameter of M^2(kappa): pi/sqrt(kappa) for kappa > 0, infinite otherwise.
double model_diameter(double kappa);

// True iff a (possibly degenerate) triangle with these side lengths exists in
// M^2(kappa). Degenerate triangles (equality in the triangle inequality, or
// perimeter exactly 2*diameter for kappa > 0) count as existing; model_angle
// resolves them to angles 0 or pi.
bool triangle_exists(double kappa, const TriangleSides& sides);

// Angle at the vertex opposite side a, in [0, pi].
// Throws GeometryError if the sides are infeasible in M^2(kappa).
double model_angle(double kappa, const TriangleSides& sides);

// All three angles: (alpha, beta, gamma) opposite (a, b, c).
ModelAngles model_angles(double kappa, const TriangleSides& sides);

// Third side of the hinge (b, c, alpha): the length a with
// model_angle(kappa, {a,b,c}) == alpha. For kappa > 0 requires b, c <= diameter.
double model_side(double kappa, double b, double c, double alpha);

// Area of the model triangle. For kappa != 0 this equals
// (alpha+beta+gamma - pi)/kappa; computed in a cancellation-free form so the
// value stays accurate down to |kappa|*side^2 ~ 0.
double model_area(double kappa, const TriangleSides& sides);

// Relative excess delta_kappa: (measured angle sum) - (model angle sum of the
// same sides in M^2(kappa)).
double relative_excess(double kappa, const ModelAngles& measured, const TriangleSides& sides);

}  // namespace bicgeo
