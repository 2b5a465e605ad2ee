#include "bicgeo/conformal.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bicgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAtomClearance = 1e-3;

// Adaptive Simpson on [a, b].
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (b - a) / 12.0 * (fa + 4.0 * flm + fm);
  const double right = (b - a) / 12.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol, int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace

double disc_log_potential(const Vec2& z, double abs_tol) {
  const double zz = dot(z, z);
  if (!(zz < 1.0)) throw GeometryError("disc_log_potential: point outside the open disc");
  // Polar coordinates around z: the radial part of ln|z - zeta| integrates in
  // closed form, int_0^R rho ln rho drho = R^2 (2 ln R - 1) / 4.
  const auto f = [&](double phi) {
    const Vec2 e{std::cos(phi), std::sin(phi)};
    const double ze = dot(z, e);
    const double R = -ze + std::sqrt(std::max(0.0, ze * ze + 1.0 - zz));
    if (R <= 0.0) return 0.0;
    return 0.25 * R * R * (2.0 * std::log(R) - 1.0);
  };
  return integrate(f, 0.0, kTwoPi, abs_tol);
}

double potential(const PlanarMeasure& m, const Vec2& z) {
  double acc = 0.0;
  for (const PlanarAtom& a : m.atoms) {
    const double r = dist(z, a.pos);
    if (r <= 1e-12) throw GeometryError("potential: evaluation at an atom (metric pole)");
    acc += a.mass * std::log(r);
  }
  if (m.density != 0.0) acc += m.density * disc_log_potential(z);
  return -acc / kTwoPi;
}

double segment_length(const PlanarMeasure& m, const Vec2& a, const Vec2& b, double abs_tol) {
  const double len = dist(a, b);
  if (len == 0.0) return 0.0;
  const auto f = [&](double t) { return std::exp(potential(m, a + (b - a) * t)); };
  return len * integrate(f, 0.0, 1.0, abs_tol / std::max(len, 1e-12));
}

ConformalGrid::ConformalGrid(const PlanarMeasure& measure, int resolution)
    : measure_(measure), n_(std::max(8, resolution)), h_(2.0 / n_) {
  index_.assign(static_cast<size_t>(n_ + 1) * (n_ + 1), -1);
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= n_; ++j) {
      const Vec2 p{-1.0 + i * h_, -1.0 + j * h_};
      if (norm(p) >= 1.0 - 1e-9) continue;
      bool clear = true;
      for (const PlanarAtom& a : measure_.atoms)
        if (dist(p, a.pos) < kAtomClearance) clear = false;
      if (!clear) continue;
      index_[static_cast<size_t>(i) * (n_ + 1) + j] = static_cast<int>(pos_.size());
      pos_.push_back(p);
    }
  }

  weight_.resize(pos_.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long k = 0; k < static_cast<long>(pos_.size()); ++k)
    weight_[k] = std::exp(potential(measure_, pos_[k]));

  // 8-neighbor edges with Simpson-rule weights.
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  std::vector<std::vector<std::pair<int, double>>> adj(pos_.size());
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= n_; ++j) {
      const int u = node_at(i, j);
      if (u < 0) continue;
      for (const auto& d : dirs) {
        const int i2 = i + d[0], j2 = j + d[1];
        if (i2 < 0 || i2 > n_ || j2 < 0 || j2 > n_) continue;
        const int v = node_at(i2, j2);
        if (v < 0) continue;
        const double len = dist(pos_[u], pos_[v]);
        const double wm = std::exp(potential(measure_, (pos_[u] + pos_[v]) * 0.5));
        const double w = len * (weight_[u] + 4.0 * wm + weight_[v]) / 6.0;
        adj[u].emplace_back(v, w);
        adj[v].emplace_back(u, w);
      }
    }
  }
  adj_start_.assign(pos_.size() + 1, 0);
  for (size_t u = 0; u < pos_.size(); ++u)
    adj_start_[u + 1] = adj_start_[u] + static_cast<int>(adj[u].size());
  adj_node_.resize(adj_start_.back());
  adj_w_.resize(adj_start_.back());
  for (size_t u = 0; u < pos_.size(); ++u) {
    int at = adj_start_[u];
    for (const auto& [v, w] : adj[u]) {
      adj_node_[at] = v;
      adj_w_[at] = w;
      ++at;
    }
  }
}

bool ConformalGrid::admissible_segment(const Vec2& a, const Vec2& b) const {
  // Stay clear of atom poles; the disc itself is convex.
  for (const PlanarAtom& atom : measure_.atoms) {
    const Vec2 e = b - a;
    const double len2 = dot(e, e);
    const double t = len2 > 0.0 ? std::clamp(dot(atom.pos - a, e) / len2, 0.0, 1.0) : 0.0;
    if (dist(a + e * t, atom.pos) < 1.2 * kAtomClearance) return false;
  }
  return true;
}

double ConformalGrid::distance(const Vec2& z1, const Vec2& z2) const {
  if (!(norm(z1) < 1.0) || !(norm(z2) < 1.0))
    throw GeometryError("conformal distance: endpoint outside the disc");
  if (dist(z1, z2) == 0.0) return 0.0;

  // Dijkstra with the two endpoints attached to nearby lattice nodes.
  const size_t N = pos_.size();
  std::vector<double> dist_to(N + 2, kInf);
  std::vector<int> prev(N + 2, -1);
  const int s = static_cast<int>(N), t = static_cast<int>(N + 1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;

  auto attach = [&](const Vec2& z, int id) {
    std::vector<std::pair<int, double>> links;
    const int ci = static_cast<int>(std::floor((z.x + 1.0) / h_));
    const int cj = static_cast<int>(std::floor((z.y + 1.0) / h_));
    for (int i = std::max(0, ci - 2); i <= std::min(n_, ci + 3); ++i) {
      for (int j = std::max(0, cj - 2); j <= std::min(n_, cj + 3); ++j) {
        const int v = node_at(i, j);
        if (v < 0 || !admissible_segment(z, pos_[v])) continue;
        links.emplace_back(v, segment_length(measure_, z, pos_[v]));
      }
    }
    if (links.empty()) throw GeometryError("conformal distance: endpoint isolated on the grid");
    (void)id;
    return links;
  };
  const auto s_links = attach(z1, s);
  const auto t_links = attach(z2, t);

  dist_to[s] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist_to[u]) continue;
    if (u == t) break;
    if (u == s) {
      for (const auto& [v, w] : s_links) {
        if (d + w < dist_to[v]) {
          dist_to[v] = d + w;
          prev[v] = s;
          pq.emplace(d + w, v);
        }
      }
      continue;
    }
    for (int e = adj_start_[u]; e < adj_start_[u + 1]; ++e) {
      const int v = adj_node_[e];
      if (d + adj_w_[e] < dist_to[v]) {
        dist_to[v] = d + adj_w_[e];
        prev[v] = u;
        pq.emplace(d + adj_w_[e], v);
      }
    }
  }
  for (const auto& [v, w] : t_links) {
    if (dist_to[v] + w < dist_to[t]) {
      dist_to[t] = dist_to[v] + w;
      prev[t] = v;
    }
  }

  // Direct segment (exact for atom-free measures).
  double best_direct = kInf;
  if (admissible_segment(z1, z2)) best_direct = segment_length(measure_, z1, z2);
  if (dist_to[t] == kInf) return best_direct;

  // Extract the polyline and straighten it greedily: replace grid sub-paths
  // by straight chords whenever the quadrature length does not exceed the
  // replaced cost. The result stays an upper bound on d_u and sheds the
  // lattice anisotropy.
  std::vector<Vec2> poly;
  for (int u = t; u != -1; u = prev[u])
    poly.push_back(u == t ? z2 : (u == s ? z1 : pos_[u]));
  std::reverse(poly.begin(), poly.end());
  std::vector<double> costs(poly.size(), 0.0);
  {
    int u = t;
    size_t k = poly.size() - 1;
    while (prev[u] != -1) {
      double w = kInf;
      if (u == t) {
        w = dist_to[t] - dist_to[prev[u]];
      } else if (prev[u] == s) {
        w = dist_to[u];
      } else {
        w = dist_to[u] - dist_to[prev[u]];
      }
      costs[k--] = w;
      u = prev[u];
    }
  }

  double total = 0.0;
  size_t i = 0;
  while (i + 1 < poly.size()) {
    size_t best_j = i + 1;
    double best_cost = costs[i + 1];
    double replaced = costs[i + 1];
    for (size_t j = i + 2; j < poly.size(); ++j) {
      replaced += costs[j];
      if (!admissible_segment(poly[i], poly[j])) continue;
      const double c = segment_length(measure_, poly[i], poly[j]);
      if (c <= replaced + 1e-12) {
        best_j = j;
        best_cost = c;
      }
    }
    total += best_cost;
    i = best_j;
  }
  return std::min(total, best_direct);
}

double conformal_distance(const PlanarMeasure& m, const Vec2& z1, const Vec2& z2,
                          int resolution) {
  ConformalGrid grid(m, resolution);
  return grid.distance(z1, z2);
}

CuspDivergence cusp_divergence(const PlanarMeasure& m, std::vector<double> epsilons, double r0) {
  if (m.atoms.size() != 1 || norm(m.atoms[0].pos) > 1e-12 || m.density != 0.0)
    throw GeometryError("cusp_divergence: expects a single atom at the origin, zero density");
  std::sort(epsilons.begin(), epsilons.end(), std::greater<double>());
  CuspDivergence out;
  out.r0 = r0;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < r0))
      throw GeometryError("cusp_divergence: epsilon outside (0, r0)");
    const auto f = [&](double r) { return std::exp(potential(m, Vec2{r, 0.0})); };
    out.epsilons.push_back(eps);
    out.lengths.push_back(integrate(f, eps, r0, 1e-10, 48));
  }
  for (size_t k = 1; k < out.lengths.size(); ++k) {
    const double num = std::log(out.lengths[k] / out.lengths[k - 1]);
    const double den = std::log(out.epsilons[k - 1] / out.epsilons[k]);
    out.growth_rates.push_back(num / den);
  }
  return out;
}

}  // namespace bicgeo
