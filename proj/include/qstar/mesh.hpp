#pragma once

// Convex polyhedral surfaces: validation, intrinsic face frames, edge gluing
// and vertex angle fans. A Polyhedron is immutable once built.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qstar/geometry.hpp"

namespace qstar {

/// Relative tolerances are multiplied by the bounding-box diagonal.
struct Tolerances {
  double plane_rel = 1e-9;
  double convex_rel = 1e-9;
  double locus_rel = 1e-9;
  double angle = 1e-9;
};

struct Edge {
  int v0 = -1;  // v0 < v1
  int v1 = -1;
  int face[2] = {-1, -1};
  int corner[2] = {-1, -1};  // face[i]'s side starting at this corner
};

/// One face corner in the angular fan around a vertex.
struct FanCorner {
  int face = -1;
  int corner = -1;
  double angle = 0.0;   // interior face angle at the vertex
  double offset = 0.0;  // cumulative angle of the preceding corners
};

class Polyhedron {
 public:
  static Polyhedron from_lists(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces,
                               Tolerances tol = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec3& vertex(int v) const { return vertices_.at(v); }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<int>& face(int f) const { return faces_.at(f); }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_size(int f) const { return static_cast<int>(faces_.at(f).size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::string& label(int v) const { return labels_.at(v); }
  void set_labels(std::vector<std::string> labels);

  /// Face corner coordinates in the face's own isometric 2D frame (CCW from outside).
  std::span<const Vec2> face_coords(int f) const { return frames_.at(f).coords; }
  Vec2 corner_coords(int f, int k) const { return frames_.at(f).coords.at(k); }
  Vec3 to_world(int f, Vec2 p) const;
  Vec3 face_normal(int f) const { return frames_.at(f).normal; }

  /// Index of vertex v among the corners of f, or -1.
  int corner_of(int f, int v) const;
  /// Edge id of side k (corner k to corner k+1) of face f.
  int side_edge(int f, int k) const { return side_edge_.at(f).at(k); }
  int neighbor_face(int f, int k) const { return neighbor_.at(f).at(k).first; }
  int neighbor_side(int f, int k) const { return neighbor_.at(f).at(k).second; }
  /// Maps f's frame onto the frame of the face across side k.
  const Rigid2& transfer(int f, int k) const { return transfer_.at(f).at(k); }
  /// Edge id joining a and b, or -1.
  int find_edge(int a, int b) const;

  /// Interior planar angle of face f at vertex v. Throws if v is not a corner of f.
  double face_angle(int f, int v) const;
  double corner_angle(int f, int k) const { return frames_.at(f).angles.at(k); }
  double total_angle(int v) const { return total_angle_.at(v); }
  /// 2pi minus the incident face angles.
  double curvature(int v) const { return kTwoPi - total_angle_.at(v); }
  /// Vertices whose curvature vanishes (surrounded by coplanar faces).
  bool is_flat(int v) const { return curvature(v) <= tol_.angle; }
  std::span<const FanCorner> fan(int v) const { return fans_.at(v); }

  /// Position of a direction (given in face f's frame, emanating from v) in v's
  /// angular fan, in [0, total_angle(v)].
  double fan_position(int v, int f, Vec2 dir) const;
  /// Inverse of fan_position: face and unit direction in that face's frame.
  std::pair<int, Vec2> fan_direction(int v, double position) const;

  double diagonal() const { return diagonal_; }
  double tol_locus() const { return tol_.locus_rel * diagonal_; }
  const Tolerances& tolerances() const { return tol_; }
  double face_area(int f) const;
  double surface_area() const;

 private:
  struct Frame {
    Vec3 origin, ex, ey, normal;
    std::vector<Vec2> coords;
    std::vector<double> angles;
  };

  std::vector<Vec3> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::string> labels_;
  std::vector<Frame> frames_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, int> edge_index_;
  std::vector<std::vector<int>> side_edge_;
  std::vector<std::vector<std::pair<int, int>>> neighbor_;
  std::vector<std::vector<Rigid2>> transfer_;
  std::vector<std::vector<FanCorner>> fans_;
  std::vector<double> total_angle_;
  double diagonal_ = 0.0;
  Tolerances tol_;
};

/// Parses the OFF subset: `OFF`, `nV nF nE`, nV vertex lines, nF face lines.
Polyhedron load_off(std::string_view text, Tolerances tol = {});
Polyhedron load_off_file(const std::string& path, Tolerances tol = {});
/// Serializes with round-trip precision.
std::string write_off(const Polyhedron& poly);

}  // namespace qstar
