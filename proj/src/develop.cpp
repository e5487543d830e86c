#include "qstar/develop.hpp"

#include <algorithm>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

/// Side index of face f carrying edge e.
int side_of_edge(const Polyhedron& poly, int f, int e) {
  const Edge& ed = poly.edge(e);
  if (ed.face[0] == f) return ed.corner[0];
  if (ed.face[1] == f) return ed.corner[1];
  return -1;
}

}  // namespace

Vec3 position(const Polyhedron& poly, const SurfacePoint& p) {
  switch (p.kind) {
    case LocusKind::Face:
      return poly.to_world(p.id, p.uv);
    case LocusKind::Edge: {
      const Edge& e = poly.edge(p.id);
      return poly.vertex(e.v0) * (1.0 - p.t) + poly.vertex(e.v1) * p.t;
    }
    case LocusKind::Vertex:
      return poly.vertex(p.id);
  }
  return {};
}

bool lies_on_face(const Polyhedron& poly, const SurfacePoint& p, int f) {
  switch (p.kind) {
    case LocusKind::Face:
      return p.id == f;
    case LocusKind::Edge:
      return side_of_edge(poly, f, p.id) >= 0;
    case LocusKind::Vertex:
      return poly.corner_of(f, p.id) >= 0;
  }
  return false;
}

Vec2 coords_in_face(const Polyhedron& poly, const SurfacePoint& p, int f) {
  switch (p.kind) {
    case LocusKind::Face:
      if (p.id != f) break;
      return p.uv;
    case LocusKind::Edge: {
      const int k = side_of_edge(poly, f, p.id);
      if (k < 0) break;
      const int n = poly.face_size(f);
      const Vec2 a = poly.corner_coords(f, k), b = poly.corner_coords(f, (k + 1) % n);
      const double s = poly.face(f)[k] == poly.edge(p.id).v0 ? p.t : 1.0 - p.t;
      return a + (b - a) * s;
    }
    case LocusKind::Vertex: {
      const int k = poly.corner_of(f, p.id);
      if (k < 0) break;
      return poly.corner_coords(f, k);
    }
  }
  throw InputError("surface point does not lie on face " + std::to_string(f));
}

SurfacePoint locate(const Polyhedron& poly, int f, Vec2 q) {
  const double tol = poly.tol_locus();
  const int n = poly.face_size(f);
  for (int k = 0; k < n; ++k)
    if (norm(q - poly.corner_coords(f, k)) <= tol) return SurfacePoint::at_vertex(poly.face(f)[k]);
  for (int k = 0; k < n; ++k) {
    const Vec2 a = poly.corner_coords(f, k), b = poly.corner_coords(f, (k + 1) % n);
    if (point_segment_distance(q, a, b) <= tol) {
      const double s = closest_param(a, b, q);
      const int e = poly.side_edge(f, k);
      const double t = poly.face(f)[k] == poly.edge(e).v0 ? s : 1.0 - s;
      return SurfacePoint::on_edge(e, t);
    }
  }
  return SurfacePoint::on_face(f, q);
}

Development unroll_chain(const Polyhedron& poly, std::span<const int> faces, Rigid2 base) {
  Development dev;
  if (faces.empty()) return dev;
  dev.faces.assign(faces.begin(), faces.end());
  dev.placements.push_back(base);
  for (std::size_t i = 1; i < faces.size(); ++i) {
    const int prev = faces[i - 1], cur = faces[i];
    int side = -1;
    for (int k = 0; k < poly.face_size(cur); ++k)
      if (poly.neighbor_face(cur, k) == prev) side = k;
    if (side < 0)
      throw InputError("faces " + std::to_string(prev) + " and " + std::to_string(cur) +
                       " are not adjacent");
    dev.placements.push_back(dev.placements.back().compose(poly.transfer(cur, side)));
  }
  return dev;
}

double GeodesicPath::length() const {
  double l = 0.0;
  for (const auto& s : segments) l += s.length();
  return l;
}

std::vector<SurfacePoint> GeodesicPath::waypoints(const Polyhedron&) const {
  std::vector<SurfacePoint> w{start};
  for (const Crossing& c : crossings)
    w.push_back(c.kind == CrossingKind::Edge ? SurfacePoint::on_edge(c.edge, c.t)
                                             : SurfacePoint::at_vertex(c.vertex));
  w.push_back(end);
  return w;
}

double rule_right_angle(VertexRule rule, double theta) {
  switch (rule) {
    case VertexRule::Bisect:
      return 0.5 * theta;
    case VertexRule::RightPi:
      return std::min(kPi, theta);
    case VertexRule::LeftPi:
      return theta - std::min(kPi, theta);
  }
  return 0.5 * theta;
}

int default_crossing_cap(const Polyhedron& poly) {
  return 10 * poly.num_faces() * poly.num_faces();
}

GeodesicWalker::GeodesicWalker(const Polyhedron& poly, int face, Vec2 point, Vec2 dir,
                               VertexRule rule)
    : poly_(&poly), face_(face), point_(point), dir_(normalized(dir)), rule_(rule) {}

GeodesicWalker::Step GeodesicWalker::cast() const {
  const Polyhedron& P = *poly_;
  const int n = P.face_size(face_);
  const double tol = P.tol_locus();
  double best_t = std::numeric_limits<double>::infinity();
  int best_side = -1;
  double best_s = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == from_side_) continue;
    if (from_corner_ >= 0 && (k == from_corner_ || k == (from_corner_ + n - 1) % n)) continue;
    const Vec2 a = P.corner_coords(face_, k), b = P.corner_coords(face_, (k + 1) % n);
    const Vec2 e = b - a;
    if (std::abs(cross(e, point_ - a)) <= tol * norm(e) && cross(e, dir_) >= 0.0) continue;
    const double denom = cross(dir_, e);
    if (std::abs(denom) < 1e-15 * norm(e)) continue;
    const double t = cross(a - point_, e) / denom;
    const double s = cross(a - point_, dir_) / denom;
    const double slack = tol / norm(e);
    if (t <= 0.0 || s < -slack || s > 1.0 + slack) continue;
    if (t < best_t) {
      best_t = t;
      best_side = k;
      best_s = std::clamp(s, 0.0, 1.0);
    }
  }
  if (best_side < 0) throw GeometryError("geodesic tracing lost its face (ray escapes face)");

  Step step;
  const Vec2 hit = point_ + dir_ * best_t;
  step.segment = {face_, point_, hit};
  for (int k = 0; k < n; ++k) {
    if (norm(hit - P.corner_coords(face_, k)) <= tol) {
      step.segment.b = P.corner_coords(face_, k);
      step.crossing.kind = CrossingKind::Vertex;
      step.crossing.vertex = P.face(face_)[k];
      return step;
    }
  }
  const int e = P.side_edge(face_, best_side);
  step.crossing.kind = CrossingKind::Edge;
  step.crossing.edge = e;
  step.crossing.t = P.face(face_)[best_side] == P.edge(e).v0 ? best_s : 1.0 - best_s;
  return step;
}

void GeodesicWalker::continue_past(const Step& step) {
  const Polyhedron& P = *poly_;
  if (step.crossing.kind == CrossingKind::Edge) {
    const int k = side_of_edge(P, face_, step.crossing.edge);
    const Rigid2& T = P.transfer(face_, k);
    point_ = T.apply(step.segment.b);
    dir_ = normalized(T.rotate(dir_));
    const int g = P.neighbor_face(face_, k);
    from_side_ = P.neighbor_side(face_, k);
    from_corner_ = -1;
    face_ = g;
    return;
  }
  const int v = step.crossing.vertex;
  const double theta = P.total_angle(v);
  const double in_rev = P.fan_position(v, face_, -dir_);
  const double left = theta - rule_right_angle(rule_, theta);
  auto [g, d] = P.fan_direction(v, in_rev - left);
  face_ = g;
  dir_ = d;
  from_corner_ = P.corner_of(g, v);
  from_side_ = -1;
  point_ = P.corner_coords(g, from_corner_);
}

TraceResult trace_geodesic(const Polyhedron& poly, const SurfacePoint& start, double dir_angle,
                           const StopCondition& stop) {
  int face = -1;
  if (start.kind == LocusKind::Face) {
    face = start.id;
  } else if (start.kind == LocusKind::Edge) {
    face = poly.edge(start.id).face[0];
  } else {
    throw InputError("geodesic tracing cannot start at a vertex");
  }
  const Vec2 q0 = coords_in_face(poly, start, face);
  GeodesicWalker walker(poly, face, q0, unit_from_angle(dir_angle), stop.rule);
  const double tol = poly.tol_locus();
  const int cap = stop.max_crossings.value_or(default_crossing_cap(poly));

  TraceResult res;
  res.path.start = start;
  double travelled = 0.0;
  auto finish = [&](PathSegment seg, StopReason why) {
    res.path.segments.push_back(seg);
    res.path.end = locate(poly, seg.face, seg.b);
    res.reason = why;
    return res;
  };

  while (true) {
    GeodesicWalker::Step step = walker.cast();
    PathSegment seg = step.segment;
    const double len = seg.length();
    const Vec2 dir = (seg.b - seg.a) / len;

    // Earliest stop event along this segment.
    double cut = std::numeric_limits<double>::infinity();
    StopReason why = StopReason::MaxLength;
    int hit_index = -1;
    if (travelled + len >= stop.max_length) {
      cut = stop.max_length - travelled;
      why = StopReason::MaxLength;
    }
    for (std::size_t h = 0; h < stop.hit_points.size(); ++h) {
      const SurfacePoint& hp = stop.hit_points[h];
      if (!lies_on_face(poly, hp, seg.face)) continue;
      const Vec2 q = coords_in_face(poly, hp, seg.face);
      const double along = dot(q - seg.a, dir);
      if (along <= tol || along > len + tol) continue;
      if (std::abs(cross(dir, q - seg.a)) > tol) continue;
      if (along < cut) {
        cut = along;
        why = StopReason::HitPoint;
        hit_index = static_cast<int>(h);
      }
    }
    if (stop.self_intersection) {
      const std::size_t n = res.path.segments.size();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const PathSegment& old = res.path.segments[i];
        if (old.face != seg.face) continue;
        if (auto t = segment_hit_param(seg.a, seg.b, old.a, old.b, tol)) {
          const double along = *t * len;
          if (along > tol && along < cut) {
            cut = along;
            why = StopReason::SelfIntersection;
          }
        }
      }
    }
    if (cut <= len) {
      seg.b = seg.a + dir * cut;
      res.hit_index = hit_index;
      return finish(seg, why);
    }

    travelled += len;
    if (step.crossing.kind == CrossingKind::Vertex && stop.stop_at_vertex) {
      res.hit_vertex = step.crossing.vertex;
      res.path.segments.push_back(seg);
      res.path.end = SurfacePoint::at_vertex(step.crossing.vertex);
      res.reason = StopReason::VertexHit;
      return res;
    }
    if (static_cast<int>(res.path.crossings.size()) >= cap) {
      if (stop.max_crossings) return finish(seg, StopReason::MaxCrossings);
      throw GeometryError("crossing cap exceeded after " + std::to_string(cap) +
                          " crossings (geodesic may not close)");
    }
    const int prev_face = walker.face();
    walker.continue_past(step);
    Crossing c = step.crossing;
    if (c.kind == CrossingKind::Vertex) {
      auto [l, r] = junction_angles(poly, SurfacePoint::at_vertex(c.vertex), prev_face, dir,
                                    walker.face(), walker.direction());
      c.left = l;
      c.right = r;
    }
    res.path.segments.push_back(seg);
    res.path.crossings.push_back(c);
  }
}

std::pair<double, double> junction_angles(const Polyhedron& poly, const SurfacePoint& where, int fin,
                                          Vec2 din, int fout, Vec2 dout) {
  switch (where.kind) {
    case LocusKind::Vertex: {
      const int v = where.id;
      const double theta = poly.total_angle(v);
      const double in_rev = poly.fan_position(v, fin, -din);
      const double out = poly.fan_position(v, fout, dout);
      const double left = wrap_angle(in_rev - out, theta);
      return {left, theta - left};
    }
    case LocusKind::Edge: {
      Vec2 d = dout;
      if (fin != fout) {
        const int k = side_of_edge(poly, fin, where.id);
        if (k < 0 || poly.neighbor_face(fin, k) != fout)
          throw GeometryError("junction faces do not share the crossing edge");
        d = poly.transfer(fin, k).inverse().rotate(dout);
      }
      const double left = angle_ccw(d, -din);
      return {left, kTwoPi - left};
    }
    case LocusKind::Face: {
      if (fin != fout) throw GeometryError("face-interior junction spans two faces");
      const double left = angle_ccw(dout, -din);
      return {left, kTwoPi - left};
    }
  }
  return {kPi, kPi};
}

std::pair<double, double> side_angles(const Polyhedron& poly, const GeodesicPath& path,
                                      std::size_t index) {
  if (index == 0 || index > path.crossings.size())
    throw InputError("side angles are defined only at interior waypoints");
  const PathSegment& in = path.segments[index - 1];
  const PathSegment& out = path.segments[index];
  const Crossing& c = path.crossings[index - 1];
  const SurfacePoint where = c.kind == CrossingKind::Edge ? SurfacePoint::on_edge(c.edge, c.t)
                                                          : SurfacePoint::at_vertex(c.vertex);
  return junction_angles(poly, where, in.face, normalized(in.b - in.a), out.face,
                         normalized(out.b - out.a));
}

}  // namespace qstar
