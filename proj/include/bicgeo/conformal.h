#pragma once

#include <vector>

#include "bicgeo/model_trig.h"
#include "bicgeo/vec2.h"

// Conformal factors e^u from a measure on the unit disc: u is the logarithmic
// potential -(1/2pi) integral of ln|z - zeta| against the measure, d_u is the
// induced length metric inf over paths of the integral of e^u |dz|. A single
// atom omega at the origin produces the flat cone of total angle 2pi - omega;
// atoms at or above 2pi make the origin infinitely far (cusp).

namespace bicgeo {

struct PlanarAtom {
  Vec2 pos;       // inside the open unit disc
  double mass = 0.0;
};

struct PlanarMeasure {
  std::vector<PlanarAtom> atoms;
  double density = 0.0;  // constant coefficient against Lebesgue measure on the disc
};

// Logarithmic potential of the uniform unit disc, integral of ln|z - zeta|
// over the disc: adaptive polar quadrature around z (the radial integral is
// analytic, which removes the singularity). |z| < 1.
double disc_log_potential(const Vec2& z, double abs_tol = 1e-8);

// u(z) = -(1/2pi) [ sum_i m_i ln|z - z_i| + density * disc_log_potential(z) ].
// Throws GeometryError at an atom position (metric pole).
double potential(const PlanarMeasure& m, const Vec2& z);

// Length of the straight segment [a, b] in the metric e^u |dz| by adaptive
// Simpson quadrature.
double segment_length(const PlanarMeasure& m, const Vec2& a, const Vec2& b,
                      double abs_tol = 1e-9);

// Shortest-path upper bounds on d_u over a grid graph: 8-neighbor lattice of
// the given resolution with Simpson-rule edge weights, nodes within 1e-3 of
// an atom removed; extracted paths are straightened by a shortcut pass whose
// segment lengths come from the adaptive quadrature.
class ConformalGrid {
public:
  ConformalGrid(const PlanarMeasure& measure, int resolution);

  int resolution() const { return n_; }
  double distance(const Vec2& z1, const Vec2& z2) const;

private:
  int node_at(int i, int j) const { return index_[static_cast<size_t>(i) * (n_ + 1) + j]; }
  bool admissible_segment(const Vec2& a, const Vec2& b) const;

  const PlanarMeasure measure_;
  int n_;
  double h_;
  std::vector<int> index_;      // lattice -> node id (-1 removed)
  std::vector<Vec2> pos_;
  std::vector<double> weight_;  // e^u at the node
  std::vector<int> adj_start_;
  std::vector<int> adj_node_;
  std::vector<double> adj_w_;
};

double conformal_distance(const PlanarMeasure& m, const Vec2& z1, const Vec2& z2,
                          int resolution);

struct CuspDivergence {
  std::vector<double> epsilons;
  std::vector<double> lengths;      // radial lengths from eps to r0
  std::vector<double> growth_rates; // fitted exponent between consecutive eps
  double r0 = 0.0;
};

// Radial segment lengths int_eps^r0 e^u dr for a measure with a single atom
// at the origin and zero density: diverging like log(1/eps) at mass 2pi,
// like eps^{1 - mass/2pi} above, and converging below.
CuspDivergence cusp_divergence(const PlanarMeasure& m, std::vector<double> epsilons,
                               double r0 = 0.5);

}  // namespace bicgeo
