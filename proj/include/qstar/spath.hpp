#pragma once

// Shortest paths from the vertices inside a half to its boundary loop.

#include <optional>
#include <utility>
#include <vector>

#include "qstar/qloop.hpp"

namespace qstar {

/// Shortest path sp(v) from an interior vertex to the boundary of a half.
struct CutSegment {
  int vertex = -1;
  double length = 0.0;
  std::vector<Vec3> points;          // v, crossings, foot
  std::vector<SurfacePoint> loci;    // same points as surface loci
  std::vector<int> face_seq;         // original faces traversed
  std::vector<int> piece_seq;        // half pieces traversed
  std::vector<PathSegment> segments; // per piece, in the parent face frame
  int tied = 1;                      // co-minimal geodesics found
  bool hits_loop_point = false;

  // Foot v' on the half boundary: boundary side `foot_side` (from position
  // foot_side to foot_side + 1) at parameter foot_s, or the node at position
  // foot_side when foot_at_node.
  int foot_side = -1;
  double foot_s = 0.0;
  bool foot_at_node = false;
  SurfacePoint foot;
  /// Counterclockwise angle at the foot from the outgoing boundary direction
  /// to the cut (pointing back to v).
  double offset = 0.0;

  // Last straight piece of the path, in the frame of piece `last_piece`.
  int last_piece = -1;
  Vec2 last_from{};
  Vec2 foot_uv{};
};

struct SearchOptions {
  double tie_rel = 1e-9;
  long max_windows = 4'000'000;
};

/// Globally shortest path from interior vertex v to the boundary of H.
CutSegment shortest_to_q(const Polyhedron& poly, const Half& H, int v, const SearchOptions& opts = {});

/// One cut per non-flat interior vertex. Cuts not ending at the loop point
/// come first ordered by vertex id, followed by the cuts ending at the loop
/// point in counterclockwise order around it.
std::vector<CutSegment> all_cuts(const Polyhedron& poly, const Half& H, const SearchOptions& opts = {});
/// Same result computed with one OpenMP task per vertex.
std::vector<CutSegment> all_cuts_parallel(const Polyhedron& poly, const Half& H,
                                          const SearchOptions& opts = {});

/// |angle - π/2| between the cut and the loop at its foot, or nullopt when the
/// foot is a loop node (a vertex, a crossing point, or x).
std::optional<double> check_orthogonality(const Half& H, const CutSegment& c);

/// First pair of cuts that cross or touch (other than sharing the loop
/// point), using exact predicates; nullopt when pairwise disjoint.
std::optional<std::pair<int, int>> find_crossing_cuts(const Half& H, const std::vector<CutSegment>& cuts);

}  // namespace qstar
