#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bicgeo/cone.h"
#include "bicgeo/exact_geodesics.h"
#include "bicgeo/rng.h"
#include "bicgeo/steiner.h"

// Alexandrov comparison testing over a distance oracle: CBB quadruple and CAT
// four-point margins, point-on-side comparisons, upper-angle estimation and
// relative-excess profiles, and the seeded sampling suites behind them.

namespace bicgeo {

// ------------------------------------------------------------------ oracles

// A metric space handle: points are integer ids owned by the oracle;
// interpolation (when supported) may append new points.
class DistanceOracle {
public:
  virtual ~DistanceOracle() = default;
  virtual std::string name() const = 0;
  virtual int point_count() const = 0;
  virtual double distance(int a, int b) const = 0;
  virtual int sample_point(Rng& rng) = 0;
  virtual std::string describe_point(int id) const = 0;

  virtual bool has_interpolation() const { return false; }
  // Point at arclength fraction t along a minimizing geodesic from a to b.
  virtual int point_on_segment(int a, int b, double t);

  // Failure tolerance appropriate for this oracle's distance accuracy.
  virtual double declared_tolerance() const { return 1e-6; }

  // Pairwise distances among the first n points; row-major n x n.
  virtual std::vector<double> pool_matrix(int n, bool parallel) const;
};

// The Euclidean plane, sampled in a square: the calibration oracle.
class PlaneOracle final : public DistanceOracle {
public:
  explicit PlaneOracle(double half_width = 1.0) : half_width_(half_width) {}
  std::string name() const override { return "plane"; }
  int point_count() const override { return static_cast<int>(pts_.size()); }
  double distance(int a, int b) const override { return dist(pts_[a], pts_[b]); }
  int sample_point(Rng& rng) override;
  int add_point(const Vec2& p);
  std::string describe_point(int id) const override;
  bool has_interpolation() const override { return true; }
  int point_on_segment(int a, int b, double t) override;
  double declared_tolerance() const override { return 1e-9; }

private:
  double half_width_;
  std::vector<Vec2> pts_;
};

// Exact cone metric.
class ConeOracle final : public DistanceOracle {
public:
  explicit ConeOracle(const ConeSpec& spec, double sample_rmax = 0.0);
  std::string name() const override;
  int point_count() const override { return static_cast<int>(pts_.size()); }
  double distance(int a, int b) const override;
  int sample_point(Rng& rng) override;
  int add_point(const ConePoint& p);
  const ConePoint& point(int id) const { return pts_[id]; }
  std::string describe_point(int id) const override;
  bool has_interpolation() const override { return true; }
  int point_on_segment(int a, int b, double t) override;
  double declared_tolerance() const override { return 1e-9; }

private:
  ConeSpec spec_;
  double sample_rmax_;
  std::vector<ConePoint> pts_;
};

// Exact solver over a kappa = 0 surface. Distances are cached per pair.
class ExactSurfaceOracle final : public DistanceOracle {
public:
  explicit ExactSurfaceOracle(const TriangulatedSurface& surface);
  std::string name() const override { return "surface-exact"; }
  int point_count() const override { return static_cast<int>(pts_.size()); }
  double distance(int a, int b) const override;
  int sample_point(Rng& rng) override;
  int add_point(const SurfacePoint& p);
  const SurfacePoint& point(int id) const { return pts_[id]; }
  std::string describe_point(int id) const override;
  bool has_interpolation() const override { return true; }
  int point_on_segment(int a, int b, double t) override;
  double declared_tolerance() const override { return 1e-6; }
  const ExactGeodesicSolver& solver() const { return solver_; }
  std::vector<double> pool_matrix(int n, bool parallel) const override;

private:
  const GeodesicPath& path_between(int a, int b);

  const TriangulatedSurface* surface_;
  ExactGeodesicSolver solver_;
  std::vector<double> areas_;
  std::vector<SurfacePoint> pts_;
  mutable std::map<std::pair<int, int>, double> dist_cache_;
  std::map<std::pair<int, int>, GeodesicPath> path_cache_;
};

// Steiner-graph upper bounds over any surface; no interpolation.
class SteinerSurfaceOracle final : public DistanceOracle {
public:
  SteinerSurfaceOracle(const TriangulatedSurface& surface, int refinement);
  std::string name() const override { return "surface-steiner"; }
  int point_count() const override { return static_cast<int>(pts_.size()); }
  double distance(int a, int b) const override;
  int sample_point(Rng& rng) override;
  int add_point(const SurfacePoint& p);
  std::string describe_point(int id) const override;
  double declared_tolerance() const override { return 1e-4; }
  std::vector<double> pool_matrix(int n, bool parallel) const override;

private:
  SteinerGraph graph_;
  std::vector<double> areas_;
  std::vector<SurfacePoint> pts_;
  mutable std::map<std::pair<int, int>, double> dist_cache_;
};

// ------------------------------------------------------------ angle kernels

// Model angle at p of the triangle with d(p,x), d(p,y), d(x,y); nullopt when
// the model triangle does not exist in M^2(kappa) (skip signal, not fatal).
std::optional<double> model_angle_from_distances(double kappa, double dxy, double dpx,
                                                 double dpy);
std::optional<double> model_angle_at(const DistanceOracle& oracle, double kappa, int p, int x,
                                     int y);

// CBB quadruple margin at p: 2*pi - (sum of the three model angles at p).
// Margin >= 0 means the quadruple satisfies the CBB(kappa) condition.
struct CbbDistances {
  double px, py, pz, xy, yz, zx;
};
struct MarginValue {
  double margin = 0.0;
  double extreme_angle = 0.0;  // min over involved angles of min(a, pi - a)
};
std::optional<MarginValue> cbb_quadruple_margin(double kappa, const CbbDistances& d);
std::optional<MarginValue> cbb_quadruple_margin(const DistanceOracle& oracle, double kappa,
                                                int p, int x, int y, int z);

// CAT four-point margin: max over the two alternatives of
// (angle(.;q,x) + angle(.;q,y) - angle(.;x,y)); skip when any involved model
// angle is undefined (the definition's escape clause).
struct CatDistances {
  double pq, px, py, qx, qy, xy;
};
std::optional<MarginValue> cat_fourpoint_margin(double kappa, const CatDistances& d);
std::optional<MarginValue> cat_fourpoint_margin(const DistanceOracle& oracle, double kappa,
                                                int p, int q, int x, int y);

// ------------------------------------------------- interpolation diagnostics

enum class ComparisonMode { CBB, CAT };

// Point-on-side comparison: m at fraction t along [q r], m~ the matching
// point on the model side; margin = d(p,m) - d~(p~,m~) for CBB and its
// negation for CAT. nullopt when the model triangle is undefined.
std::optional<double> point_side_margin(DistanceOracle& oracle, double kappa, int p, int q,
                                        int r, double t, ComparisonMode mode);

struct AngleEstimate {
  double angle = 0.0;               // value at the smallest scale
  std::vector<double> scales;
  std::vector<double> sequence;     // model angle at each scale
  double last_step = 0.0;           // |sequence[k] - sequence[k-1]|, k = last
};

std::vector<double> default_angle_scales(const DistanceOracle& oracle, int p, int x, int y);

// Hinge angle estimate at p between [px] and [py]: the kappa = 0 model angle
// of points taken at equal arclength s along both geodesics, for each scale.
AngleEstimate upper_angle_estimate(DistanceOracle& oracle, int p, int x, int y,
                                   const std::vector<double>& scales);

// Adjacent-hinge diagnostic: p interior to the geodesic [x z] (caller
// guarantees adjacency), y a third point; returns the two hinge estimates
// whose sum the CBB definition bounds by pi.
std::pair<AngleEstimate, AngleEstimate> adjacent_hinge_angles(DistanceOracle& oracle, int x,
                                                              int p, int z, int y,
                                                              const std::vector<double>& scales);

struct ExcessProfile {
  double mu_hat = 0.0;   // sample max of delta_kappa (lower estimate of the sup)
  double nu_hat = 0.0;   // sample min (upper estimate of the inf)
  int evaluated = 0;
  int skipped = 0;
  double estimate_slack = 0.0;  // largest last-step of any angle sequence used
};

// Relative-excess profile of the triangle (p,q,r): samples x on [pq], y on
// [pr] over an n x n grid and computes delta_kappa of each sub-triangle with
// estimated angles. Both outputs are one-sided estimates.
ExcessProfile excess_profile(DistanceOracle& oracle, double kappa, int p, int q, int r, int n);

// ----------------------------------------------------------------- suites

enum class Condition { CBB, CatGlobal, CatLocal };
std::string to_string(Condition c);

struct SuiteConfig {
  Condition condition = Condition::CBB;
  double kappa = 0.0;
  int samples = 10000;
  int pool = 64;
  std::uint64_t seed = 0;
  // Margin < -tolerance counts as a failure; 0 picks the oracle's declared
  // tolerance.
  double tolerance = 0.0;
  double locality_radius = 0.0;  // required for CatLocal
  double min_angle_floor = 1e-3;
  bool parallel = true;
  // Constructed quadruples (existing point ids), evaluated ahead of the
  // random samples and exempt from the angle floor.
  std::vector<std::array<int, 4>> extra_quadruples;
};

struct Witness {
  std::array<int, 4> points;
  std::array<double, 6> distances;
  double margin = 0.0;
};

struct ComparisonReport {
  std::string oracle;
  Condition condition = Condition::CBB;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double min_angle_floor = 0.0;
  double locality_radius = 0.0;
  long attempted = 0;
  long evaluated = 0;
  long skipped = 0;
  long failures = 0;
  double worst_margin = 0.0;
  std::vector<Witness> worst;  // up to 10, most negative first
  std::vector<std::string> witness_points;  // descriptions for the worst list
};

ComparisonReport run_suite(DistanceOracle& oracle, const SuiteConfig& config);

// Single-threaded reference with identical output; kept for testing and for
// the benchmark comparison.
ComparisonReport run_suite_serial(DistanceOracle& oracle, const SuiteConfig& config);

}  // namespace bicgeo
