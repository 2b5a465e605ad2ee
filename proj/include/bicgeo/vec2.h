#pragma once

#include <cmath>

namespace bicgeo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Orientation-preserving rigid motion of the plane.
struct Isometry2 {
  double c = 1.0, s = 0.0;  // rotation (cos, sin)
  double tx = 0.0, ty = 0.0;

  Vec2 operator()(const Vec2& p) const { return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty}; }

  Isometry2 inverse() const {
    return Isometry2{c, -s, -(c * tx + s * ty), -(-s * tx + c * ty)};
  }
};

// The unique orientation-preserving isometry with a0 -> b0, a1 -> b1
// (|a1 - a0| and |b1 - b0| assumed equal).
inline Isometry2 align_segments(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  const Vec2 da = a1 - a0, db = b1 - b0;
  const double n2 = dot(da, da);
  Isometry2 m;
  m.c = (da.x * db.x + da.y * db.y) / n2;
  m.s = (da.x * db.y - da.y * db.x) / n2;
  m.tx = b0.x - (m.c * a0.x - m.s * a0.y);
  m.ty = b0.y - (m.s * a0.x + m.c * a0.y);
  return m;
}

}  // namespace bicgeo
