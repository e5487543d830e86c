#pragma once

// Small fixed-size vector types, planar rigid motions and exact orientation
// predicates shared by every module.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace qstar {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline Vec2 rotate(Vec2 a, double ang) {
  const double c = std::cos(ang), s = std::sin(ang);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(Vec3 o) { x += o.x; y += o.y; z += o.z; return *this; }
  bool operator==(const Vec3&) const = default;
};

inline Vec3 operator*(double s, Vec3 v) { return v * s; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return a / norm(a); }

/// Counterclockwise angle from `from` to `to`, in [0, 2pi).
inline double angle_ccw(Vec2 from, Vec2 to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

/// Unsigned angle between two vectors, in [0, pi].
inline double angle_between(Vec2 a, Vec2 b) {
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

/// Wraps an angle into [0, period).
inline double wrap_angle(double a, double period = kTwoPi) {
  a = std::fmod(a, period);
  if (a < 0.0) a += period;
  if (a >= period) a -= period;
  return a;
}

/// Orientation-preserving planar isometry p -> R p + t.
struct Rigid2 {
  double c = 1.0;
  double s = 0.0;
  Vec2 t{};

  Vec2 apply(Vec2 p) const { return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y}; }
  Vec2 rotate(Vec2 v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
  double angle() const { return std::atan2(s, c); }

  Rigid2 inverse() const {
    Rigid2 r{c, -s, {}};
    r.t = -r.rotate(t);
    return r;
  }
  /// (*this) after `inner`: p -> this(inner(p)).
  Rigid2 compose(const Rigid2& inner) const {
    Rigid2 r{c * inner.c - s * inner.s, s * inner.c + c * inner.s, {}};
    r.t = apply(inner.t);
    return r;
  }

  static Rigid2 from_angle(double ang, Vec2 t) { return {std::cos(ang), std::sin(ang), t}; }

  /// Rotation + translation carrying segment a0->a1 onto b0->b1 (a0 to b0, direction onto direction).
  static Rigid2 aligning(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const Vec2 da = normalized(a1 - a0);
    const Vec2 db = normalized(b1 - b0);
    Rigid2 r{dot(da, db), cross(da, db), {}};
    r.t = b0 - r.rotate(a0);
    return r;
  }
};

inline double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

/// Closest point on segment [a,b] to p, returned as the parameter in [0,1].
inline double closest_param(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 d = b - a;
  const double dd = dot(d, d);
  if (dd == 0.0) return 0.0;
  double t = dot(p - a, d) / dd;
  return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double t = closest_param(a, b, p);
  return norm(p - (a + (b - a) * t));
}

// ---------------------------------------------------------------------------
// Exact predicates on snapped coordinates.
//
// Points are rounded onto an integer grid of pitch kSnapGrid; orientation is
// then evaluated in 128-bit integers, which is exact for |coord| < ~9e6.

inline constexpr double kSnapGrid = 1e-12;

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const GridPoint&) const = default;
};

GridPoint snap(Vec2 p);

/// Sign of the orientation of (a, b, c): +1 left turn, -1 right turn, 0 collinear.
int orient(const GridPoint& a, const GridPoint& b, const GridPoint& c);

/// True if closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const GridPoint& a, const GridPoint& b, const GridPoint& c,
                        const GridPoint& d);

/// Floating-point intersection of segment [a,b] with [c,d]. Returns the
/// parameter along [a,b] of the first common point (collinear overlaps give
/// the first overlapping point) when the segments meet within `eps`.
std::optional<double> segment_hit_param(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps);

}  // namespace qstar
