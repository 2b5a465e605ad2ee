#include <doctest.h>

#include <cmath>

#include "bicgeo/cone.h"
#include "bicgeo/conformal.h"

using namespace bicgeo;

TEST_CASE("disc log potential matches the closed form") {
  // Uniform unit disc: integral of ln|z - zeta| equals pi (|z|^2 - 1)/2 inside.
  for (const Vec2 z : {Vec2{0, 0}, Vec2{0.3, 0.0}, Vec2{-0.2, 0.55}, Vec2{0.0, 0.9}}) {
    const double want = kPi * (dot(z, z) - 1.0) / 2.0;
    CHECK(disc_log_potential(z) == doctest::Approx(want).epsilon(0).scale(1).epsilon(1e-7));
  }
}

TEST_CASE("potential: closed forms, additivity, poles") {
  PlanarMeasure empty;
  CHECK(potential(empty, {0.3, 0.4}) == 0.0);

  PlanarMeasure one;
  one.atoms.push_back({{0, 0}, kTwoPi});
  const Vec2 z{0.25, 0.1};
  CHECK(potential(one, z) == doctest::Approx(-std::log(norm(z))).epsilon(1e-14));

  PlanarMeasure a, b, both;
  a.atoms.push_back({{0.2, 0.0}, 1.0});
  b.atoms.push_back({{-0.3, 0.4}, 0.7});
  both.atoms = {a.atoms[0], b.atoms[0]};
  CHECK(potential(both, z) == doctest::Approx(potential(a, z) + potential(b, z)).epsilon(1e-15));

  CHECK_THROWS_AS(potential(one, {0, 0}), GeometryError);
}

TEST_CASE("segment length reduces to Euclidean length at zero potential") {
  PlanarMeasure empty;
  CHECK(segment_length(empty, {-0.5, 0.2}, {0.4, -0.1}) ==
        doctest::Approx(std::hypot(0.9, 0.3)).epsilon(1e-12));
}

TEST_CASE("conformal distance: atom-free disc is Euclidean") {
  PlanarMeasure empty;
  ConformalGrid grid(empty, 64);
  const Vec2 a{-0.4, 0.25}, b{0.5, -0.3};
  CHECK(grid.distance(a, b) == doctest::Approx(dist(a, b)).epsilon(1e-9));
  CHECK_THROWS_AS(grid.distance({1.5, 0.0}, b), GeometryError);
}

namespace {

// Radial change of variables identifying the single-atom disc metric
// r^{-m/2pi} |dz| with the flat cone of angle 2pi - m.
ConePoint cone_image(double mass, const Vec2& z) {
  const double scale = 1.0 - mass / kTwoPi;  // angle compression factor
  const double r = norm(z);
  const double rho = std::pow(r, scale) / scale;
  const double phi = std::atan2(z.y, z.x);
  return {rho, scale * phi};
}

}  // namespace

TEST_CASE("single atom reproduces the flat cone metric within 1%") {
  const double mass = kPi / 2;
  PlanarMeasure m;
  m.atoms.push_back({{0, 0}, mass});
  const ConeSpec cone{0.0, kTwoPi - mass};  // 3*pi/2

  ConformalGrid grid(m, 256);
  struct Pair {
    Vec2 a, b;
  };
  for (const Pair& pr : {Pair{{0.3, 0.1}, {-0.5, 0.4}},
                         Pair{{0.25, -0.55}, {0.6, 0.2}},
                         Pair{{-0.7, -0.1}, {0.1, 0.65}}}) {
    ConePoint ca = cone_image(mass, pr.a);
    ConePoint cb = cone_image(mass, pr.b);
    ca = make_cone_point(cone, ca.r, ca.phi);
    cb = make_cone_point(cone, cb.r, cb.phi);
    const double want = cone_distance(cone, ca, cb);
    const double got = grid.distance(pr.a, pr.b);
    CHECK(got == doctest::Approx(want).epsilon(0.01));
    CHECK(got >= want - 1e-9);  // grid paths are upper bounds
  }
}

TEST_CASE("rotational symmetry of the single-atom metric") {
  PlanarMeasure m;
  m.atoms.push_back({{0, 0}, kPi});
  ConformalGrid grid(m, 128);
  const double d1 = grid.distance({0.5, 0.0}, {0.0, 0.45});
  const double rot = 0.8;
  const auto rotv = [&](const Vec2& v) {
    return Vec2{v.x * std::cos(rot) - v.y * std::sin(rot),
                v.x * std::sin(rot) + v.y * std::cos(rot)};
  };
  const double d2 = grid.distance(rotv({0.5, 0.0}), rotv({0.0, 0.45}));
  CHECK(d1 == doctest::Approx(d2).epsilon(5e-3));
}

TEST_CASE("grid refinement does not increase distances (beyond quadrature slack)") {
  PlanarMeasure empty;
  const Vec2 a{-0.35, 0.2}, b{0.45, -0.25};
  double prev = kInfiniteLength;
  for (int n : {128, 256, 512}) {
    const double d = conformal_distance(empty, a, b, n);
    CHECK(d <= prev + 1e-9);
    prev = d;
  }
  // Total decrease below 5% on atom-free instances.
  CHECK(conformal_distance(empty, a, b, 128) - prev <= 0.05 * prev);

  PlanarMeasure m;
  m.atoms.push_back({{0, 0}, kPi / 2});
  CHECK(conformal_distance(m, a, b, 128) >= conformal_distance(m, a, b, 256) - 1e-6);
}

TEST_CASE("cusp divergence dichotomy") {
  const double r0 = 0.5;
  SUBCASE("mass 2*pi: logarithmic growth, halving adds ln 2") {
    PlanarMeasure m;
    m.atoms.push_back({{0, 0}, kTwoPi});
    const CuspDivergence d = cusp_divergence(m, {1e-3, 5e-4, 2.5e-4, 1.25e-4}, r0);
    for (size_t k = 0; k < d.lengths.size(); ++k)
      CHECK(d.lengths[k] == doctest::Approx(std::log(r0 / d.epsilons[k])).epsilon(1e-8));
    for (size_t k = 1; k < d.lengths.size(); ++k)
      CHECK(d.lengths[k] - d.lengths[k - 1] ==
            doctest::Approx(std::log(2.0)).epsilon(0).scale(1).epsilon(1e-6));
  }
  SUBCASE("mass 3*pi: power divergence eps^{-1/2} with sqrt(2) ratio") {
    PlanarMeasure m;
    m.atoms.push_back({{0, 0}, 3.0 * kPi});
    const CuspDivergence d = cusp_divergence(m, {1e-4, 5e-5}, r0);
    const auto closed = [&](double eps) {
      return 2.0 * (1.0 / std::sqrt(eps) - 1.0 / std::sqrt(r0));
    };
    CHECK(d.lengths[0] == doctest::Approx(closed(1e-4)).epsilon(1e-8));
    CHECK(d.lengths[1] == doctest::Approx(closed(5e-5)).epsilon(1e-8));
    // The divergent parts scale exactly by sqrt 2 under eps halving.
    const double c = 2.0 / std::sqrt(r0);
    CHECK((d.lengths[1] + c) / (d.lengths[0] + c) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(0).scale(1).epsilon(1e-6));
    CHECK(d.growth_rates.back() == doctest::Approx(0.5).epsilon(0.01));
  }
  SUBCASE("mass pi: integrable singularity, lengths converge") {
    PlanarMeasure m;
    m.atoms.push_back({{0, 0}, kPi});
    const CuspDivergence d = cusp_divergence(m, {1e-3, 1e-4, 1e-5, 1e-6}, r0);
    const double limit = 2.0 * std::sqrt(r0);
    for (size_t k = 0; k < d.lengths.size(); ++k) {
      CHECK(d.lengths[k] <= limit);
      CHECK(d.lengths[k] == doctest::Approx(2.0 * (std::sqrt(r0) - std::sqrt(d.epsilons[k])))
                                .epsilon(1e-8));
    }
    CHECK(d.lengths.back() == doctest::Approx(limit).epsilon(1e-2));
  }
}
