#pragma once

// Flattening of each half by curvature-triangle insertion, planar development,
// seam selection, and the final join.

#include <optional>
#include <string>
#include <vector>

#include "qstar/spath.hpp"

namespace qstar {

/// Isosceles triangle glued into the cut of a vertex with curvature omega;
/// split into two triangles of apex omega/2 when omega >= pi.
struct CurvatureTriangle {
  int vertex = -1;
  double omega = 0.0;
  double leg = 0.0;
  int pieces = 1;

  double apex() const { return omega / pieces; }
  double base_angle() const { return 0.5 * (kPi - apex()); }
  /// Base length of one piece.
  double base_length() const { return 2.0 * leg * std::sin(0.5 * apex()); }
  double area() const { return pieces * 0.5 * leg * leg * std::sin(apex()); }
};

CurvatureTriangle make_triangle(int vertex, double omega, double leg);

/// Point on the loop: segment index and parameter along it.
struct LoopPosition {
  int segment = 0;
  double t = 0.0;
};

enum class EdgeKind { QSegment, TriangleBase };
const char* to_string(EdgeKind k);

struct DiskEdge {
  EdgeKind kind = EdgeKind::QSegment;
  double length = 0.0;
  int interval = -1;  // QSegment: loop interval from break `interval` to the next
  int cut = -1;       // TriangleBase: index into the half's cuts
  int piece = 0;      // TriangleBase: 0 or 1
};

struct DiskCorner {
  double angle = kPi;  // interior angle
  int brk = -1;        // loop break this corner is an image of, or -1
  int cut = -1;        // apex-side corner between two base pieces of this cut
  bool x_image = false;
};

/// Boundary word of a half after cutting and triangle insertion; edge i joins
/// corner i to corner i + 1 with the interior on the left.
struct FlatDisk {
  Side side = Side::Left;
  bool loop_side = false;  // the half holding the angle beta > pi at x
  std::vector<DiskCorner> corners;
  std::vector<DiskEdge> edges;
  std::vector<CutSegment> cuts;
  std::vector<CurvatureTriangle> triangles;  // parallel to cuts
  int x2 = -1;  // corner where the boundary arrives at x
  int x1 = -1;  // corner where the boundary leaves x
  double x_angle = 0.0;  // interior angle at x on this side
};

/// Cut ending at x, for the turn of the base chain.
struct XCut {
  double offset = 0.0;  // angle from the outgoing loop side
  double omega = 0.0;
  int pieces = 1;
};

/// Points where the loop is broken into intervals: loop vertices, x, nodes
/// with a side angle other than pi, and every cut foot. Sorted by arc length.
struct LoopBreaks {
  std::vector<LoopPosition> pos;
  std::vector<double> arc;
  std::vector<int> loop_index;  // loop point index, or -1 inside a segment
  double total = 0.0;

  int size() const { return static_cast<int>(pos.size()); }
  double interval_length(int j) const;
};

LoopBreaks loop_breaks(const Polyhedron& poly, const QuasigeodesicLoop& loop, const Half& left,
                       const Half& right, const std::vector<CutSegment>& left_cuts,
                       const std::vector<CutSegment>& right_cuts);

/// Loop position of a cut foot.
LoopPosition foot_position(const QuasigeodesicLoop& loop, const Half& H, const CutSegment& c);

FlatDisk insert_triangles(const Polyhedron& poly, const QuasigeodesicLoop& loop, const Half& H,
                          const std::vector<CutSegment>& cuts, const LoopBreaks& breaks);

struct PlanarDevelopment {
  FlatDisk disk;
  std::vector<Vec2> boundary;  // corner images, counterclockwise
  std::vector<Vec2> apex;      // per cut, image of the vertex
  double closure = 0.0;        // gap of the boundary walk
  double total_turn = 0.0;     // from the planar coordinates
  double min_turn = 0.0;
  std::vector<int> reflex;     // corners with interior angle > pi
  std::vector<XCut> x_cuts;    // ascending offset

  int size() const { return static_cast<int>(boundary.size()); }
  double turn(int i) const;
  /// Corners from x1 counterclockwise to x2 (empty unless loop side).
  std::vector<int> chain12() const;
  /// Corners from x2 counterclockwise to x1 (empty unless loop side).
  std::vector<int> chain21() const;
  double area() const;
};

/// Develops the disk by a boundary walk. Throws GeometryError with an edge
/// pair certificate when the result is not simple or does not close.
PlanarDevelopment develop_half(const Polyhedron& poly, const FlatDisk& disk);

/// Turn of the chain of triangle bases at x: sum(beta_i) - sum(omega_i) plus
/// the end corrections e_1 + e_k, with e = omega / 2 (one piece) or omega / 4
/// (two pieces).
double tau21_formula(const std::vector<XCut>& xs);

struct ChainReport {
  int k = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double sum_beta = 0.0;
  double tau21_formula = 0.0;
  double tau21_chain = 0.0;       // from the planar coordinates, reflex positive
  double max_subchain_turn = 0.0; // largest turn over contiguous subchains
};

/// Throws InputError when dev is not the loop side.
ChainReport turn_of_C21(const PlanarDevelopment& dev);

struct SeamCandidate {
  int interval = -1;
  double length = 0.0;
  int edge[2] = {-1, -1};  // edge index in the left and right development
  double support[2] = {0.0, 0.0};  // largest distance to the wrong side
  bool valid = false;
  bool y_rule = false;  // incident to a vertex between y1 and y2
};

struct Seam {
  SeamCandidate chosen;
  std::vector<SeamCandidate> candidates;
  bool fallback = false;
  int y1 = -1, y2 = -1;  // corner indices in the loop-side development
};

/// Support test of loop interval j in both developments.
SeamCandidate seam_candidate(const PlanarDevelopment& left, const PlanarDevelopment& right, int interval);

/// Throws GeometryError listing the candidates when none supports both halves.
Seam select_seam(const PlanarDevelopment& left, const PlanarDevelopment& right, const QuasigeodesicLoop& loop);

struct PolygonEdge {
  int half = 0;  // 0 left, 1 right
  int edge = -1; // edge index in that development
  bool leg = false;  // cut image (surface polygon only)
  int leg_end = 0;
};

struct UnfoldedPolygon {
  std::vector<Vec2> polygon;  // with curvature triangles
  std::vector<PolygonEdge> provenance;
  std::vector<Vec2> surface;  // triangles removed: the unfolding of the surface
  std::vector<PolygonEdge> surface_provenance;
  Vec2 seam[2]{};
  Rigid2 right_placement{};
  std::vector<Vec2> right_boundary;  // right development after placement
};

/// Places the right development along the seam and splices the boundaries.
/// Throws GeometryError when the result is not simple.
UnfoldedPolygon join(const PlanarDevelopment& left, const PlanarDevelopment& right, const Seam& seam);

}  // namespace qstar
