#include "bicgeo/model_trig.h"

#include <algorithm>
#include <cmath>

namespace bicgeo {

namespace {

// Below this value of |kappa| * (max side)^2 the flat formulas are exact to
// double precision and the curved ones start to cancel.
constexpr double kFlatThreshold = 1e-12;

// Relative slack accepted on the triangle-inequality and perimeter boundaries.
constexpr double kBoundaryTol = 1e-9;

bool effectively_flat(double kappa, double max_side) {
  return std::abs(kappa) * max_side * max_side < kFlatThreshold;
}

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

double model_diameter(double kappa) {
  if (kappa > 0.0) return kPi / std::sqrt(kappa);
  return kInfiniteLength;
}

bool triangle_exists(double kappa, const TriangleSides& s) {
  if (!(s.a >= 0.0 && s.b >= 0.0 && s.c >= 0.0)) return false;
  const double scale = std::max({s.a, s.b, s.c, 1e-300});
  const double tol = kBoundaryTol * scale;
  if (s.a > s.b + s.c + tol) return false;
  if (s.b > s.c + s.a + tol) return false;
  if (s.c > s.a + s.b + tol) return false;
  if (kappa > 0.0) {
    const double perimeter = s.a + s.b + s.c;
    if (perimeter > 2.0 * model_diameter(kappa) + tol) return false;
  }
  return true;
}

double model_angle(double kappa, const TriangleSides& s) {
  if (!(s.a >= 0.0 && s.b >= 0.0 && s.c >= 0.0))
    throw GeometryError("model_angle: negative side length");
  if (!triangle_exists(kappa, s)) {
    if (kappa > 0.0 && s.a + s.b + s.c > 2.0 * model_diameter(kappa))
      throw GeometryError("model_angle: perimeter exceeds 2*diameter of M^2(kappa)");
    throw GeometryError("model_angle: triangle inequality violated");
  }

  // Half-perimeter defects; >= 0 up to roundoff once feasibility holds.
  const double s0 = 0.5 * (s.a + s.b + s.c);
  const double s1 = clamp0(0.5 * (s.a + s.b - s.c));  // s0 - c
  const double s2 = clamp0(0.5 * (s.a - s.b + s.c));  // s0 - b
  const double s3 = clamp0(0.5 * (s.b + s.c - s.a));  // s0 - a

  double num, den;
  if (effectively_flat(kappa, std::max({s.a, s.b, s.c}))) {
    num = s1 * s2;
    den = s0 * s3;
  } else if (kappa > 0.0) {
    const double g = std::sqrt(kappa);
    num = std::sin(g * s1) * std::sin(g * s2);
    den = std::sin(g * s0) * std::sin(g * s3);
  } else {
    const double g = std::sqrt(-kappa);
    num = std::sinh(g * s1) * std::sinh(g * s2);
    den = std::sinh(g * s0) * std::sinh(g * s3);
  }

  // tan(alpha/2) = sqrt(num/den); degenerate configurations hit 0 or pi.
  if (num <= 0.0) return 0.0;
  if (den <= 0.0) return kPi;
  return 2.0 * std::atan(std::sqrt(num / den));
}

ModelAngles model_angles(double kappa, const TriangleSides& s) {
  return ModelAngles{model_angle(kappa, s),
                     model_angle(kappa, TriangleSides{s.b, s.c, s.a}),
                     model_angle(kappa, TriangleSides{s.c, s.a, s.b})};
}

double model_side(double kappa, double b, double c, double alpha) {
  if (!(b >= 0.0 && c >= 0.0)) throw GeometryError("model_side: negative side length");
  if (!(alpha >= 0.0 && alpha <= kPi + 1e-12))
    throw GeometryError("model_side: angle outside [0, pi]");
  alpha = std::min(alpha, kPi);

  const double sh = std::sin(0.5 * alpha);
  if (effectively_flat(kappa, std::max(b, c))) {
    const double d = b - c;
    return std::sqrt(d * d + 4.0 * b * c * sh * sh);
  }
  if (kappa > 0.0) {
    const double g = std::sqrt(kappa);
    if (b > model_diameter(kappa) * (1.0 + kBoundaryTol) ||
        c > model_diameter(kappa) * (1.0 + kBoundaryTol))
      throw GeometryError("model_side: side exceeds diameter of M^2(kappa)");
    const double sd = std::sin(0.5 * g * (b - c));
    const double r = std::sqrt(sd * sd + std::sin(g * b) * std::sin(g * c) * sh * sh);
    return 2.0 / g * std::asin(std::min(1.0, r));
  }
  const double g = std::sqrt(-kappa);
  const double sd = std::sinh(0.5 * g * (b - c));
  const double r = std::sqrt(clamp0(sd * sd + std::sinh(g * b) * std::sinh(g * c) * sh * sh));
  return 2.0 / g * std::asinh(r);
}

double model_area(double kappa, const TriangleSides& s) {
  if (!triangle_exists(kappa, s))
    throw GeometryError("model_area: sides infeasible in M^2(kappa)");

  if (effectively_flat(kappa, std::max({s.a, s.b, s.c}))) {
    // Numerically stable Heron form (sides sorted x >= y >= z).
    double x = s.a, y = s.b, z = s.c;
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    const double t = clamp0((x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z)));
    return 0.25 * std::sqrt(t);
  }

  const double s0 = 0.5 * (s.a + s.b + s.c);
  const double s1 = clamp0(0.5 * (s.a + s.b - s.c));
  const double s2 = clamp0(0.5 * (s.a - s.b + s.c));
  const double s3 = clamp0(0.5 * (s.b + s.c - s.a));

  if (kappa > 0.0) {
    const double g = std::sqrt(kappa);
    const double t = clamp0(std::tan(0.5 * g * s0) * std::tan(0.5 * g * s3) *
                            std::tan(0.5 * g * s2) * std::tan(0.5 * g * s1));
    return 4.0 * std::atan(std::sqrt(t)) / kappa;
  }
  const double g = std::sqrt(-kappa);
  const double t = clamp0(std::tanh(0.5 * g * s0) * std::tanh(0.5 * g * s3) *
                          std::tanh(0.5 * g * s2) * std::tanh(0.5 * g * s1));
  return 4.0 * std::atan(std::sqrt(t)) / (-kappa);
}

double relative_excess(double kappa, const ModelAngles& measured, const TriangleSides& s) {
  const ModelAngles model = model_angles(kappa, s);
  return measured.sum() - model.sum();
}

}  // namespace bicgeo
