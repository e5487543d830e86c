#include "qstar/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qstar {

GridPoint snap(Vec2 p) {
  constexpr double kLimit = 9.0e18;
  const double gx = std::nearbyint(p.x / kSnapGrid);
  const double gy = std::nearbyint(p.y / kSnapGrid);
  if (!(std::abs(gx) < kLimit && std::abs(gy) < kLimit)) {
    throw std::range_error("coordinate outside the exact-predicate range");
  }
  return {static_cast<std::int64_t>(gx), static_cast<std::int64_t>(gy)};
}

int orient(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  using i128 = __int128;
  const i128 abx = static_cast<i128>(b.x) - a.x;
  const i128 aby = static_cast<i128>(b.y) - a.y;
  const i128 acx = static_cast<i128>(c.x) - a.x;
  const i128 acy = static_cast<i128>(c.y) - a.y;
  const i128 det = abx * acy - aby * acx;
  return (det > 0) - (det < 0);
}

namespace {

bool on_segment(const GridPoint& a, const GridPoint& b, const GridPoint& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const GridPoint& a, const GridPoint& b, const GridPoint& c,
                        const GridPoint& d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

std::optional<double> segment_hit_param(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double lr = norm(r);
  const double ls = norm(s);
  if (lr == 0.0 || ls == 0.0) return std::nullopt;
  const double denom = cross(r, s);
  // Sine of the angle between the segments decides parallel handling.
  if (std::abs(denom) > 1e-12 * lr * ls) {
    const double t = cross(c - a, s) / denom;
    const double u = cross(c - a, r) / denom;
    const double et = eps / lr;
    const double eu = eps / ls;
    if (t < -et || t > 1.0 + et || u < -eu || u > 1.0 + eu) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
  }
  // Parallel: only collinear overlaps count.
  if (std::abs(cross(r, c - a)) / lr > eps) return std::nullopt;
  const double tc = dot(c - a, r) / (lr * lr);
  const double td = dot(d - a, r) / (lr * lr);
  const double lo = std::max(0.0, std::min(tc, td));
  const double hi = std::min(1.0, std::max(tc, td));
  if (lo > hi + eps / lr) return std::nullopt;
  return std::clamp(lo, 0.0, 1.0);
}

}  // namespace qstar
