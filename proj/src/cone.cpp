#include "bicgeo/cone.h"

#include <cmath>

namespace bicgeo {

std::string to_string(Certification c) {
  switch (c) {
    case Certification::BICB: return "BICB";
    case Certification::BICA: return "BICA";
    case Certification::Both: return "both";
    case Certification::Neither: return "neither";
  }
  return "neither";
}

double max_cone_radius(const ConeSpec& cone) {
  if (cone.kappa > 0.0) return 0.5 * model_diameter(cone.kappa);
  return kInfiniteLength;
}

ConePoint make_cone_point(const ConeSpec& cone, double r, double phi) {
  if (!(cone.theta > 0.0)) throw GeometryError("cone: theta must be positive");
  if (!(r >= 0.0)) throw GeometryError("cone point: negative radius");
  if (r >= max_cone_radius(cone))
    throw GeometryError("cone point: radius outside the kappa > 0 cap region");
  phi = std::fmod(phi, cone.theta);
  if (phi < 0.0) phi += cone.theta;
  return ConePoint{r, phi};
}

namespace {

// Angular gap taken the short way around the apex.
double angular_gap(const ConeSpec& cone, const ConePoint& p, const ConePoint& q) {
  const double d = std::abs(p.phi - q.phi);
  return std::min(d, cone.theta - d);
}

}  // namespace

double cone_distance(const ConeSpec& cone, const ConePoint& p, const ConePoint& q) {
  const double gap = angular_gap(cone, p, q);
  if (gap <= kPi) return model_side(cone.kappa, p.r, q.r, gap);
  return p.r + q.r;
}

double cone_curvature_atom(const ConeSpec& cone) { return kTwoPi - cone.theta; }

Certification cone_certify(const ConeSpec& cone, double kappa_bound) {
  const bool below = cone.kappa >= kappa_bound && cone.theta <= kTwoPi;
  const bool above = cone.kappa <= kappa_bound && cone.theta >= kTwoPi;
  if (below && above) return Certification::Both;
  if (below) return Certification::BICB;
  if (above) return Certification::BICA;
  return Certification::Neither;
}

ConePoint cone_point_on_geodesic(const ConeSpec& cone, const ConePoint& p, const ConePoint& q,
                                 double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw GeometryError("cone_point_on_geodesic: parameter outside [0, 1]");
  const double gap = angular_gap(cone, p, q);
  const double length = cone_distance(cone, p, q);
  const double s = t * length;
  if (length <= 0.0) return p;

  // Direction of travel in phi: +1 if going from p toward q the short way
  // increases phi (ties toward +1).
  double fwd = q.phi - p.phi;
  if (fwd < 0.0) fwd += cone.theta;
  const double dir = (fwd <= cone.theta - fwd) ? 1.0 : -1.0;

  if (gap > kPi) {
    // Piecewise radial path through the apex.
    if (s <= p.r) return ConePoint{p.r - s, p.phi};
    return make_cone_point(cone, s - p.r, q.phi);
  }

  if (p.r == 0.0) return make_cone_point(cone, s, q.phi);
  // Unwrap: triangle (apex, p, x) with the angle at p shared with (apex, p, q).
  const double beta = model_angle(cone.kappa, TriangleSides{q.r, p.r, length});
  const double rx = model_side(cone.kappa, p.r, s, beta);
  if (rx == 0.0) return ConePoint{0.0, 0.0};
  const double alpha = model_angle(cone.kappa, TriangleSides{s, p.r, rx});
  return make_cone_point(cone, rx, p.phi + dir * alpha);
}

}  // namespace bicgeo
