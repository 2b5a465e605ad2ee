#pragma once

#include <string>

#include "bicgeo/model_trig.h"

// Exact metric cone over a circle: total angle theta around the apex, base
// curvature kappa. Distances have closed forms (unwrap the cone into a wedge
// of M^2(kappa)), which makes these cones the ground-truth oracle for the
// mesh-based geodesic solvers and for the comparison suites at kappa != 0.

namespace bicgeo {

struct ConeSpec {
  double kappa = 0.0;
  double theta = kTwoPi;  // total angle at the apex, > 0
};

struct ConePoint {
  double r = 0.0;    // radial distance from the apex, >= 0
  double phi = 0.0;  // angular coordinate, normalized to [0, theta)
};

enum class Certification { BICB, BICA, Both, Neither };

std::string to_string(Certification c);

// Normalizes phi into [0, theta) and validates the radius. For kappa > 0 the
// radius must stay below diameter/2 (the cap region where the unwrapping
// formula is valid and generic minimizers are unique).
ConePoint make_cone_point(const ConeSpec& cone, double r, double phi);

double max_cone_radius(const ConeSpec& cone);  // +inf for kappa <= 0

// Exact distance between two points of the cone. With the angular gap
// D = min(|phi_p - phi_q|, theta - |phi_p - phi_q|): model_side(kappa, r_p,
// r_q, D) when D <= pi, r_p + r_q otherwise (geodesic through the apex).
// For theta < 2*pi the through-apex branch is unreachable (D <= theta/2 < pi).
double cone_distance(const ConeSpec& cone, const ConePoint& p, const ConePoint& q);

// Curvature atom carried by the apex: 2*pi - theta.
double cone_curvature_atom(const ConeSpec& cone);

// Measure-inequality certification of the cone against the bound kappa_bound:
// the curvature measure is (2*pi - theta) * delta_apex + kappa * area, so
//   omega >= kappa_bound * mu  iff  kappa >= kappa_bound and theta <= 2*pi,
//   omega <= kappa_bound * mu  iff  kappa <= kappa_bound and theta >= 2*pi.
Certification cone_certify(const ConeSpec& cone, double kappa_bound);

// Point at arclength fraction t in [0, 1] along a minimizing geodesic from p
// to q (ties broken toward the path with smaller initial angle; through-apex
// paths are piecewise radial).
ConePoint cone_point_on_geodesic(const ConeSpec& cone, const ConePoint& p, const ConePoint& q,
                                 double t);

}  // namespace bicgeo
