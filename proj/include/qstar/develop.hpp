#pragma once

// Intrinsic surface geometry: surface points, planar unrolling of face chains
// and straight-line tracing across edges and through vertices.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qstar/geometry.hpp"
#include "qstar/mesh.hpp"

namespace qstar {

enum class LocusKind { Face, Edge, Vertex };

/// A point on the surface: face interior (face frame coordinates), edge
/// interior (parameter from edge.v0 to edge.v1) or a vertex.
struct SurfacePoint {
  LocusKind kind = LocusKind::Face;
  int id = -1;
  Vec2 uv{};
  double t = 0.0;

  static SurfacePoint on_face(int f, Vec2 uv) { return {LocusKind::Face, f, uv, 0.0}; }
  static SurfacePoint on_edge(int e, double t) { return {LocusKind::Edge, e, {}, t}; }
  static SurfacePoint at_vertex(int v) { return {LocusKind::Vertex, v, {}, 0.0}; }
  bool operator==(const SurfacePoint&) const = default;
};

Vec3 position(const Polyhedron& poly, const SurfacePoint& p);
/// Coordinates of p in the frame of face f; throws if p is not on f.
Vec2 coords_in_face(const Polyhedron& poly, const SurfacePoint& p, int f);
bool lies_on_face(const Polyhedron& poly, const SurfacePoint& p, int f);
/// Classifies a point given in face f's frame as vertex/edge/face, snapping
/// within the locus tolerance.
SurfacePoint locate(const Polyhedron& poly, int f, Vec2 q);

/// Placements of a chain of faces into a common plane.
struct Development {
  std::vector<int> faces;
  std::vector<Rigid2> placements;  // face frame -> plane

  Vec2 image(std::size_t i, Vec2 q) const { return placements.at(i).apply(q); }
};

/// Lays out consecutive faces sharing an edge. Throws InputError when two
/// consecutive faces are not adjacent.
Development unroll_chain(const Polyhedron& poly, std::span<const int> faces, Rigid2 base = {});

// ---------------------------------------------------------------------------
// Tracing

struct PathSegment {
  int face = -1;
  Vec2 a{};
  Vec2 b{};
  double length() const { return norm(b - a); }
};

enum class CrossingKind { Edge, Vertex };

/// Junction between consecutive path segments.
struct Crossing {
  CrossingKind kind = CrossingKind::Edge;
  int edge = -1;
  double t = 0.0;
  int vertex = -1;
  double left = kPi;
  double right = kPi;
};

struct GeodesicPath {
  SurfacePoint start;
  SurfacePoint end;
  std::vector<PathSegment> segments;
  std::vector<Crossing> crossings;  // crossings[i] joins segments[i] and segments[i+1]

  double length() const;
  /// start, every crossing point, end.
  std::vector<SurfacePoint> waypoints(const Polyhedron& poly) const;
};

/// How a quasigeodesic continues through a vertex of total angle theta.
enum class VertexRule { Bisect, RightPi, LeftPi };

/// Right-side angle the rule assigns at a vertex of total angle theta.
double rule_right_angle(VertexRule rule, double theta);

struct StopCondition {
  double max_length = std::numeric_limits<double>::infinity();
  /// Unset: the default cap 10 * F * F applies and exceeding it throws.
  std::optional<int> max_crossings;
  std::vector<SurfacePoint> hit_points;
  bool self_intersection = false;
  /// Stop and report a VertexHit instead of continuing through the vertex.
  bool stop_at_vertex = true;
  VertexRule rule = VertexRule::Bisect;
};

enum class StopReason { MaxLength, MaxCrossings, VertexHit, HitPoint, SelfIntersection };

struct TraceResult {
  GeodesicPath path;
  StopReason reason = StopReason::MaxLength;
  int hit_vertex = -1;  // VertexHit
  int hit_index = -1;   // HitPoint: index into hit_points
};

/// Step-wise straightest walk on the surface.
class GeodesicWalker {
 public:
  struct Step {
    PathSegment segment;
    Crossing crossing;  // event at the end of the segment
  };

  GeodesicWalker(const Polyhedron& poly, int face, Vec2 point, Vec2 dir,
                 VertexRule rule = VertexRule::Bisect);

  /// Casts to the next edge or vertex. Does not move past it; call continue_past().
  Step cast() const;
  /// Moves to the far side of the crossing returned by cast().
  void continue_past(const Step& step);

  int face() const { return face_; }
  Vec2 point() const { return point_; }
  Vec2 direction() const { return dir_; }

 private:
  const Polyhedron* poly_;
  int face_;
  Vec2 point_;
  Vec2 dir_;
  VertexRule rule_;
  int from_side_ = -1;
  int from_corner_ = -1;
};

TraceResult trace_geodesic(const Polyhedron& poly, const SurfacePoint& start, double dir_angle,
                           const StopCondition& stop = {});

/// Side angles (L, R) at interior waypoint `index` (1 .. waypoints-2).
std::pair<double, double> side_angles(const Polyhedron& poly, const GeodesicPath& path,
                                      std::size_t index);

/// Side angles at a junction from incoming direction `din` (in face fin) to
/// outgoing direction `dout` (in face fout), located at `where`.
std::pair<double, double> junction_angles(const Polyhedron& poly, const SurfacePoint& where, int fin,
                                          Vec2 din, int fout, Vec2 dout);

int default_crossing_cap(const Polyhedron& poly);

}  // namespace qstar
