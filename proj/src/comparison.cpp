#include "bicgeo/comparison.h"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bicgeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

// ------------------------------------------------------------------ oracles

int DistanceOracle::point_on_segment(int, int, double) {
  throw GeometryError(name() + ": oracle does not support interpolation");
}

std::vector<double> DistanceOracle::pool_matrix(int n, bool parallel) const {
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m[static_cast<size_t>(i) * n + j] = distance(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      m[static_cast<size_t>(i) * n + j] = m[static_cast<size_t>(j) * n + i];
  (void)parallel;
  return m;
}

int PlaneOracle::sample_point(Rng& rng) {
  pts_.push_back({rng.uniform(-half_width_, half_width_), rng.uniform(-half_width_, half_width_)});
  return static_cast<int>(pts_.size()) - 1;
}

int PlaneOracle::add_point(const Vec2& p) {
  pts_.push_back(p);
  return static_cast<int>(pts_.size()) - 1;
}

std::string PlaneOracle::describe_point(int id) const {
  return "(" + std::to_string(pts_[id].x) + ", " + std::to_string(pts_[id].y) + ")";
}

int PlaneOracle::point_on_segment(int a, int b, double t) {
  return add_point(pts_[a] + (pts_[b] - pts_[a]) * t);
}

ConeOracle::ConeOracle(const ConeSpec& spec, double sample_rmax) : spec_(spec) {
  sample_rmax_ = sample_rmax > 0.0 ? sample_rmax : std::min(2.0, 0.9 * max_cone_radius(spec));
}

std::string ConeOracle::name() const {
  return "cone(kappa=" + std::to_string(spec_.kappa) + ", theta=" + std::to_string(spec_.theta) +
         ")";
}

double ConeOracle::distance(int a, int b) const { return cone_distance(spec_, pts_[a], pts_[b]); }

int ConeOracle::sample_point(Rng& rng) {
  return add_point(make_cone_point(spec_, rng.uniform(0.01 * sample_rmax_, sample_rmax_),
                                   rng.uniform(0.0, spec_.theta)));
}

int ConeOracle::add_point(const ConePoint& p) {
  pts_.push_back(p);
  return static_cast<int>(pts_.size()) - 1;
}

std::string ConeOracle::describe_point(int id) const {
  return "(r=" + std::to_string(pts_[id].r) + ", phi=" + std::to_string(pts_[id].phi) + ")";
}

int ConeOracle::point_on_segment(int a, int b, double t) {
  return add_point(cone_point_on_geodesic(spec_, pts_[a], pts_[b], t));
}

ExactSurfaceOracle::ExactSurfaceOracle(const TriangulatedSurface& surface)
    : surface_(&surface), solver_(surface), areas_(face_area_cumsum(surface)) {}

double ExactSurfaceOracle::distance(int a, int b) const {
  if (a == b) return 0.0;
  const auto key = std::minmax(a, b);
  const auto it = dist_cache_.find(key);
  if (it != dist_cache_.end()) return it->second;
  const double d = solver_.distance(pts_[key.first], pts_[key.second]);
  dist_cache_.emplace(key, d);
  return d;
}

int ExactSurfaceOracle::sample_point(Rng& rng) {
  return add_point(bicgeo::sample_point(*surface_, rng, areas_));
}

int ExactSurfaceOracle::add_point(const SurfacePoint& p) {
  pts_.push_back(p);
  return static_cast<int>(pts_.size()) - 1;
}

std::string ExactSurfaceOracle::describe_point(int id) const {
  const SurfacePoint& p = pts_[id];
  return "face " + std::to_string(p.face) + " @ (" + std::to_string(p.corner_dist[0]) + ", " +
         std::to_string(p.corner_dist[1]) + ", " + std::to_string(p.corner_dist[2]) + ")";
}

const GeodesicPath& ExactSurfaceOracle::path_between(int a, int b) {
  const auto key = std::make_pair(a, b);
  const auto it = path_cache_.find(key);
  if (it != path_cache_.end()) return it->second;
  DistanceResult res = solver_.distance_and_path(pts_[a], pts_[b]);
  dist_cache_.emplace(std::minmax(a, b), res.distance);
  return path_cache_.emplace(key, std::move(res.path)).first->second;
}

int ExactSurfaceOracle::point_on_segment(int a, int b, double t) {
  return add_point(point_on_geodesic(*surface_, path_between(a, b), t));
}

std::vector<double> ExactSurfaceOracle::pool_matrix(int n, bool parallel) const {
  return solver_.distance_matrix(std::span<const SurfacePoint>(pts_.data(), n), parallel);
}

SteinerSurfaceOracle::SteinerSurfaceOracle(const TriangulatedSurface& surface, int refinement)
    : graph_(surface, refinement), areas_(face_area_cumsum(surface)) {}

double SteinerSurfaceOracle::distance(int a, int b) const {
  if (a == b) return 0.0;
  const auto key = std::minmax(a, b);
  const auto it = dist_cache_.find(key);
  if (it != dist_cache_.end()) return it->second;
  const double d = graph_.distance(pts_[key.first], pts_[key.second]);
  dist_cache_.emplace(key, d);
  return d;
}

int SteinerSurfaceOracle::sample_point(Rng& rng) {
  return add_point(bicgeo::sample_point(graph_.surface(), rng, areas_));
}

int SteinerSurfaceOracle::add_point(const SurfacePoint& p) {
  pts_.push_back(p);
  return static_cast<int>(pts_.size()) - 1;
}

std::string SteinerSurfaceOracle::describe_point(int id) const {
  const SurfacePoint& p = pts_[id];
  return "face " + std::to_string(p.face) + " @ (" + std::to_string(p.corner_dist[0]) + ", " +
         std::to_string(p.corner_dist[1]) + ", " + std::to_string(p.corner_dist[2]) + ")";
}

std::vector<double> SteinerSurfaceOracle::pool_matrix(int n, bool parallel) const {
  return graph_.distance_matrix(std::span<const SurfacePoint>(pts_.data(), n), parallel);
}

// ------------------------------------------------------------ angle kernels

std::optional<double> model_angle_from_distances(double kappa, double dxy, double dpx,
                                                 double dpy) {
  if (!(dpx > 0.0) || !(dpy > 0.0)) return std::nullopt;
  const TriangleSides sides{dxy, dpx, dpy};
  if (!triangle_exists(kappa, sides)) return std::nullopt;
  return model_angle(kappa, sides);
}

std::optional<double> model_angle_at(const DistanceOracle& oracle, double kappa, int p, int x,
                                     int y) {
  return model_angle_from_distances(kappa, oracle.distance(x, y), oracle.distance(p, x),
                                    oracle.distance(p, y));
}

namespace {

double extremeness(double angle) { return std::min(angle, kPi - angle); }

}  // namespace

std::optional<MarginValue> cbb_quadruple_margin(double kappa, const CbbDistances& d) {
  const auto a1 = model_angle_from_distances(kappa, d.xy, d.px, d.py);
  const auto a2 = model_angle_from_distances(kappa, d.yz, d.py, d.pz);
  const auto a3 = model_angle_from_distances(kappa, d.zx, d.pz, d.px);
  if (!a1 || !a2 || !a3) return std::nullopt;
  MarginValue mv;
  mv.margin = kTwoPi - (*a1 + *a2 + *a3);
  mv.extreme_angle = std::min({extremeness(*a1), extremeness(*a2), extremeness(*a3)});
  return mv;
}

std::optional<MarginValue> cbb_quadruple_margin(const DistanceOracle& oracle, double kappa,
                                                int p, int x, int y, int z) {
  const CbbDistances d{oracle.distance(p, x), oracle.distance(p, y), oracle.distance(p, z),
                       oracle.distance(x, y), oracle.distance(y, z), oracle.distance(z, x)};
  return cbb_quadruple_margin(kappa, d);
}

std::optional<MarginValue> cat_fourpoint_margin(double kappa, const CatDistances& d) {
  const auto axy = model_angle_from_distances(kappa, d.xy, d.px, d.py);
  const auto aqx = model_angle_from_distances(kappa, d.qx, d.pq, d.px);
  const auto aqy = model_angle_from_distances(kappa, d.qy, d.pq, d.py);
  const auto bxy = model_angle_from_distances(kappa, d.xy, d.qx, d.qy);
  const auto bpx = model_angle_from_distances(kappa, d.px, d.pq, d.qx);
  const auto bpy = model_angle_from_distances(kappa, d.py, d.pq, d.qy);
  if (!axy || !aqx || !aqy || !bxy || !bpx || !bpy) return std::nullopt;
  MarginValue mv;
  mv.margin = std::max(*aqx + *aqy - *axy, *bpx + *bpy - *bxy);
  mv.extreme_angle = std::min({extremeness(*axy), extremeness(*aqx), extremeness(*aqy),
                               extremeness(*bxy), extremeness(*bpx), extremeness(*bpy)});
  return mv;
}

std::optional<MarginValue> cat_fourpoint_margin(const DistanceOracle& oracle, double kappa,
                                                int p, int q, int x, int y) {
  const CatDistances d{oracle.distance(p, q), oracle.distance(p, x), oracle.distance(p, y),
                       oracle.distance(q, x), oracle.distance(q, y), oracle.distance(x, y)};
  return cat_fourpoint_margin(kappa, d);
}

// ------------------------------------------------- interpolation diagnostics

std::optional<double> point_side_margin(DistanceOracle& oracle, double kappa, int p, int q,
                                        int r, double t, ComparisonMode mode) {
  const double dqr = oracle.distance(q, r);
  const auto beta =
      model_angle_from_distances(kappa, oracle.distance(p, r), oracle.distance(q, p), dqr);
  if (!beta) return std::nullopt;
  const int m = oracle.point_on_segment(q, r, t);
  const double model = model_side(kappa, oracle.distance(q, p), t * dqr, *beta);
  const double actual = oracle.distance(p, m);
  return mode == ComparisonMode::CBB ? actual - model : model - actual;
}

std::vector<double> default_angle_scales(const DistanceOracle& oracle, int p, int x, int y) {
  const double s0 = std::min(oracle.distance(p, x), oracle.distance(p, y)) / 4.0;
  std::vector<double> scales;
  for (int i = 0; i <= 8; ++i) scales.push_back(s0 * std::pow(2.0, -i));
  return scales;
}

AngleEstimate upper_angle_estimate(DistanceOracle& oracle, int p, int x, int y,
                                   const std::vector<double>& scales) {
  const double dpx = oracle.distance(p, x), dpy = oracle.distance(p, y);
  if (!(dpx > 0.0) || !(dpy > 0.0))
    throw GeometryError("upper_angle_estimate: hinge legs must have positive length");
  AngleEstimate est;
  for (double s : scales) {
    if (s > dpx || s > dpy)
      throw GeometryError("upper_angle_estimate: scale exceeds a geodesic length");
    const int q = oracle.point_on_segment(p, x, s / dpx);
    const int r = oracle.point_on_segment(p, y, s / dpy);
    const auto angle = model_angle_from_distances(0.0, oracle.distance(q, r),
                                                  oracle.distance(p, q), oracle.distance(p, r));
    est.scales.push_back(s);
    est.sequence.push_back(angle ? *angle : kNaN);
  }
  double prev = kNaN;
  for (double a : est.sequence) {
    if (std::isnan(a)) continue;
    if (!std::isnan(prev)) est.last_step = std::abs(a - prev);
    prev = a;
    est.angle = a;
  }
  return est;
}

std::pair<AngleEstimate, AngleEstimate> adjacent_hinge_angles(DistanceOracle& oracle, int x,
                                                              int p, int z, int y,
                                                              const std::vector<double>& scales) {
  return {upper_angle_estimate(oracle, p, x, y, scales),
          upper_angle_estimate(oracle, p, z, y, scales)};
}

ExcessProfile excess_profile(DistanceOracle& oracle, double kappa, int p, int q, int r, int n) {
  ExcessProfile out;
  out.mu_hat = -kInf;
  out.nu_hat = kInf;
  const AngleEstimate at_p = upper_angle_estimate(oracle, p, q, r, default_angle_scales(oracle, p, q, r));
  out.estimate_slack = at_p.last_step;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int x = oracle.point_on_segment(p, q, static_cast<double>(i) / (n + 1));
      const int y = oracle.point_on_segment(p, r, static_cast<double>(j) / (n + 1));
      const double dpx = oracle.distance(p, x), dpy = oracle.distance(p, y);
      const double dxy = oracle.distance(x, y);
      if (!(dpx > 1e-9) || !(dpy > 1e-9) || !(dxy > 1e-9) ||
          !triangle_exists(kappa, {dxy, dpy, dpx})) {
        ++out.skipped;
        continue;
      }
      AngleEstimate at_x, at_y;
      try {
        at_x = upper_angle_estimate(oracle, x, p, y, default_angle_scales(oracle, x, p, y));
        at_y = upper_angle_estimate(oracle, y, p, x, default_angle_scales(oracle, y, p, x));
      } catch (const GeometryError&) {
        ++out.skipped;
        continue;
      }
      // Sides ordered so alpha sits at p, beta at x, gamma at y.
      const TriangleSides sides{dxy, dpy, dpx};
      const ModelAngles measured{at_p.angle, at_x.angle, at_y.angle};
      const double excess = relative_excess(kappa, measured, sides);
      out.mu_hat = std::max(out.mu_hat, excess);
      out.nu_hat = std::min(out.nu_hat, excess);
      out.estimate_slack = std::max({out.estimate_slack, at_x.last_step, at_y.last_step});
      ++out.evaluated;
    }
  }
  if (out.evaluated == 0) {
    out.mu_hat = 0.0;
    out.nu_hat = 0.0;
  }
  return out;
}

// ----------------------------------------------------------------- suites

std::string to_string(Condition c) {
  switch (c) {
    case Condition::CBB: return "cbb";
    case Condition::CatGlobal: return "cat_global";
    case Condition::CatLocal: return "cat_local";
  }
  return "cbb";
}

namespace {

struct QuadSample {
  std::array<int, 4> pts;
  bool extra = false;
};

ComparisonReport run_impl(DistanceOracle& oracle, SuiteConfig cfg, bool parallel) {
  if (cfg.tolerance <= 0.0) cfg.tolerance = oracle.declared_tolerance();
  if (cfg.condition == Condition::CatLocal && !(cfg.locality_radius > 0.0))
    throw GeometryError("local CAT suite requires a positive locality radius");

  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.pool; ++i) oracle.sample_point(rng);
  const int n = oracle.point_count();
  const std::vector<double> matrix = oracle.pool_matrix(n, parallel);
  const auto dist = [&](int a, int b) { return matrix[static_cast<size_t>(a) * n + b]; };

  std::vector<std::vector<int>> near;
  if (cfg.condition == Condition::CatLocal) {
    near.assign(n, {});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != i && dist(i, j) <= cfg.locality_radius) near[i].push_back(j);
  }

  std::vector<QuadSample> quads;
  quads.reserve(cfg.extra_quadruples.size() + cfg.samples);
  for (const auto& q : cfg.extra_quadruples) quads.push_back({q, true});
  const long want = static_cast<long>(cfg.extra_quadruples.size()) + cfg.samples;
  for (long guard = 0; static_cast<long>(quads.size()) < want && guard < 1000 * want + 4096;
       ++guard) {
    std::array<int, 4> q;
    if (cfg.condition == Condition::CatLocal) {
      q[0] = static_cast<int>(rng.next_below(n));
      const auto& cand = near[q[0]];
      if (cand.size() < 3) continue;
      for (int k = 1; k < 4; ++k) q[k] = cand[rng.next_below(cand.size())];
      bool ok = q[1] != q[2] && q[1] != q[3] && q[2] != q[3];
      for (int a = 1; a < 4 && ok; ++a)
        for (int b = a + 1; b < 4 && ok; ++b)
          if (dist(q[a], q[b]) > cfg.locality_radius) ok = false;
      if (!ok) continue;
    } else {
      for (int k = 0; k < 4; ++k) q[k] = static_cast<int>(rng.next_below(n));
      if (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] ||
          q[2] == q[3])
        continue;
    }
    quads.push_back({q, false});
  }

  const long m = static_cast<long>(quads.size());
  std::vector<double> margins(m, kNaN);
  std::vector<std::array<double, 6>> dists(m);

  const bool cat = cfg.condition != Condition::CBB;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long i = 0; i < m; ++i) {
    const auto& q = quads[i].pts;
    std::optional<MarginValue> mv;
    if (cat) {
      const CatDistances d{dist(q[0], q[1]), dist(q[0], q[2]), dist(q[0], q[3]),
                           dist(q[1], q[2]), dist(q[1], q[3]), dist(q[2], q[3])};
      dists[i] = {d.pq, d.px, d.py, d.qx, d.qy, d.xy};
      mv = cat_fourpoint_margin(cfg.kappa, d);
    } else {
      const CbbDistances d{dist(q[0], q[1]), dist(q[0], q[2]), dist(q[0], q[3]),
                           dist(q[1], q[2]), dist(q[2], q[3]), dist(q[3], q[1])};
      dists[i] = {d.px, d.py, d.pz, d.xy, d.yz, d.zx};
      mv = cbb_quadruple_margin(cfg.kappa, d);
    }
    if (!mv) continue;
    if (!quads[i].extra && mv->extreme_angle < cfg.min_angle_floor) continue;
    margins[i] = mv->margin;
  }

  ComparisonReport report;
  report.oracle = oracle.name();
  report.condition = cfg.condition;
  report.kappa = cfg.kappa;
  report.seed = cfg.seed;
  report.tolerance = cfg.tolerance;
  report.min_angle_floor = cfg.min_angle_floor;
  report.locality_radius = cfg.locality_radius;
  report.attempted = m;
  report.worst_margin = kInf;

  std::vector<long> order;
  for (long i = 0; i < m; ++i) {
    if (std::isnan(margins[i])) {
      ++report.skipped;
      continue;
    }
    ++report.evaluated;
    if (margins[i] < -cfg.tolerance) ++report.failures;
    report.worst_margin = std::min(report.worst_margin, margins[i]);
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](long a, long b) {
    if (margins[a] != margins[b]) return margins[a] < margins[b];
    return a < b;
  });
  for (size_t k = 0; k < order.size() && k < 10; ++k) {
    const long i = order[k];
    report.worst.push_back({quads[i].pts, dists[i], margins[i]});
    for (int pt : quads[i].pts)
      report.witness_points.push_back(oracle.describe_point(pt));
  }
  if (report.evaluated == 0) report.worst_margin = 0.0;
  return report;
}

}  // namespace

ComparisonReport run_suite(DistanceOracle& oracle, const SuiteConfig& config) {
  return run_impl(oracle, config, config.parallel);
}

ComparisonReport run_suite_serial(DistanceOracle& oracle, const SuiteConfig& config) {
  return run_impl(oracle, config, false);
}

}  // namespace bicgeo
