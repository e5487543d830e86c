#pragma once

// Quasigeodesic loops: construction from a seed ray, classification, and the
// split of the surface into the two halves the loop bounds.

#include <optional>
#include <utility>
#include <vector>

#include "qstar/develop.hpp"
#include "qstar/mesh.hpp"

namespace qstar {

enum class LoopKind { ClosedGeodesic, ClosedQuasigeodesic, QuasigeodesicLoop };
enum class Side { Left, Right };

const char* to_string(LoopKind k);
const char* to_string(Side s);

struct LoopPoint {
  SurfacePoint locus;
  Vec3 pos{};
  double left = kPi;   // L(p)
  double right = kPi;  // R(p)
};

/// Closed polyline on the surface; segment i joins point i to point i+1 (mod n)
/// and lies in segment_faces[i].
struct QuasigeodesicLoop {
  std::vector<LoopPoint> points;
  std::vector<int> segment_faces;
  int loop_point = -1;  // index of x, -1 when absent
  LoopKind kind = LoopKind::ClosedGeodesic;
  double beta = kPi;            // larger side angle at x
  Side beta_side = Side::Left;  // side on which beta lies

  int size() const { return static_cast<int>(points.size()); }
  double segment_length(int i) const { return norm(points[(i + 1) % size()].pos - points[i].pos); }
  double length() const;
  /// Number of faces crossed (counting repeats).
  int faces_crossed() const;
};

struct LoopOptions {
  VertexRule rule = VertexRule::Bisect;
  std::optional<int> max_crossings;  // default 10 * F * F per branch pair
};

/// Extends a geodesic from p in directions dir and dir+pi until the branches
/// meet; vertex passages follow the vertex rule.
QuasigeodesicLoop construct_loop(const Polyhedron& poly, const SurfacePoint& p, double dir_angle,
                                 const LoopOptions& opts = {});

/// Builds a loop from explicit waypoints. Segment faces are inferred when not
/// given. The loop point is the unique point violating the angle condition,
/// or `loop_point` when supplied.
QuasigeodesicLoop loop_from_waypoints(const Polyhedron& poly, const std::vector<SurfacePoint>& pts,
                                      const std::vector<int>& segment_faces = {},
                                      std::optional<int> loop_point = std::nullopt);

struct LoopReport {
  LoopKind kind = LoopKind::ClosedGeodesic;
  int loop_point = -1;
  double beta = kPi;
  Side beta_side = Side::Left;
};

/// Classifies a loop from its recorded side angles.
LoopReport classify(const QuasigeodesicLoop& loop, double tol_angle = 1e-9);

// ---------------------------------------------------------------------------
// Halves

/// A convex sub-polygon of an original face after slicing along the loop.
struct Piece {
  int parent_face = -1;
  std::vector<int> nodes;    // counterclockwise
  std::vector<Vec2> coords;  // in the parent face frame
  std::vector<int> neighbor;       // piece across side k, -1 on the loop
  std::vector<int> neighbor_side;  // side index in that piece
  std::vector<Rigid2> transfer;    // this frame -> neighbor frame

  int size() const { return static_cast<int>(nodes.size()); }
  double corner_angle(int k) const;
};

struct HalfNode {
  Vec3 pos{};
  int vertex = -1;      // original vertex id, or -1
  int loop_index = -1;  // index into the loop's points, or -1
};

/// Corners of pieces around a boundary node, from the outgoing boundary side
/// counterclockwise to the incoming one.
struct FanEntry {
  int piece = -1;
  int corner = -1;
  double offset = 0.0;
  double angle = 0.0;
};

struct Half {
  Side side = Side::Left;
  std::vector<HalfNode> nodes;
  std::vector<Piece> pieces;
  std::vector<int> boundary;            // node ids, interior on the left
  std::vector<int> boundary_loop_index; // loop point index at each position
  std::vector<std::vector<FanEntry>> fans;
  std::vector<double> interior_angle;   // per boundary position
  std::vector<int> boundary_pos;        // node id -> boundary position or -1
  std::vector<int> contained_vertices;
  int loop_point = -1;  // loop index of x when the loop has an exceptional point
  double omega_q = 0.0;  // enclosed curvature
  double tau_q = 0.0;    // boundary turn

  int boundary_size() const { return static_cast<int>(boundary.size()); }
  /// Boundary position of loop point i.
  int position_of_loop_index(int i) const;
  /// (piece, corner) pairs at an interior node.
  std::vector<std::pair<int, int>> corners_at(int node) const;
  /// Piece containing the directed boundary side starting at boundary position b.
  std::pair<int, int> boundary_side(int b) const;
  /// Angle offset of direction `dir` (in piece's frame, from node at boundary
  /// position b) measured from the outgoing boundary side.
  double fan_offset(int b, int piece, Vec2 dir) const;
};

std::pair<Half, Half> split_halves(const Polyhedron& poly, const QuasigeodesicLoop& loop);

}  // namespace qstar
