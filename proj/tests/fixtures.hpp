#pragma once

#include <string>

#include "qstar/mesh.hpp"
#include "qstar/qloop.hpp"

namespace qstar::testing {

inline std::string data_path(const std::string& name) { return std::string(QSTAR_DATA_DIR) + "/" + name; }

inline const Polyhedron& cube() {
  static const Polyhedron p = load_off_file(data_path("cube.off"));
  return p;
}
inline const Polyhedron& tetrahedron() {
  static const Polyhedron p = load_off_file(data_path("tetrahedron.off"));
  return p;
}
inline const Polyhedron& octahedron() {
  static const Polyhedron p = load_off_file(data_path("octahedron.off"));
  return p;
}
inline const Polyhedron& dodecahedron() {
  static const Polyhedron p = load_off_file(data_path("dodecahedron.off"));
  return p;
}

// Loop on the cube through the three neighbours of v2.
inline QuasigeodesicLoop cube_quasigeodesic() {
  return loop_from_waypoints(cube(), {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(5),
                                      SurfacePoint::at_vertex(7)});
}

// Traced cube loop with a 3π/2 angle at x and three vertices on its left.
// Found by a grid search over seed rays maximizing the shortest cut; frozen here.
inline constexpr int kLoopSeedFace = 0;
inline constexpr Vec2 kLoopSeedUv{0.35, 0.45};
inline constexpr double kLoopSeedDirection = 5.0365;

inline QuasigeodesicLoop cube_geodesic_loop() {
  return construct_loop(cube(), SurfacePoint::on_face(kLoopSeedFace, kLoopSeedUv), kLoopSeedDirection);
}

// Another traced cube loop of the same type hugging the bottom edges; one cut
// ends at its loop point.
inline QuasigeodesicLoop cube_loop_with_x_cut() {
  return construct_loop(cube(), SurfacePoint::on_face(0, {0.1387, 0.1321}), 0.0113);
}

// Equatorial closed geodesic of the dodecahedron: horizontal (relative to
// face 0) through the midpoint of edge (4, 8).
inline QuasigeodesicLoop dodecahedron_geodesic() {
  const Polyhedron& p = dodecahedron();
  return construct_loop(p, SurfacePoint::on_edge(p.find_edge(4, 8), 0.5), 0.0);
}

// Closed geodesic of the tetrahedron through the midpoints of edges 01, 12, 23, 30.
inline QuasigeodesicLoop tetrahedron_geodesic() {
  const Polyhedron& p = tetrahedron();
  auto mid = [&](int a, int b) { return SurfacePoint::on_edge(p.find_edge(a, b), 0.5); };
  return loop_from_waypoints(p, {mid(0, 1), mid(1, 2), mid(2, 3), mid(3, 0)});
}

// Closed quasigeodesic of the octahedron along its equator (vertices 0, 2, 1, 3).
inline QuasigeodesicLoop octahedron_equator() {
  return loop_from_waypoints(octahedron(), {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(2),
                                            SurfacePoint::at_vertex(1), SurfacePoint::at_vertex(3)});
}

// Interior point of face f pulled toward its first corner.
inline Vec2 seed_point(const Polyhedron& p, int f) {
  Vec2 c{};
  for (int j = 0; j < p.face_size(f); ++j) c = c + p.corner_coords(f, j) * (1.0 / p.face_size(f));
  return c * 0.8 + p.corner_coords(f, 0) * 0.2;
}

}  // namespace qstar::testing
