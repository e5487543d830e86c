#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/mesh.hpp"

using namespace qstar;
using qstar::testing::cube;
using qstar::testing::dodecahedron;
using qstar::testing::octahedron;
using qstar::testing::tetrahedron;

TEST(LoadOff, CubeCombinatorics) {
  const Polyhedron& p = cube();
  EXPECT_EQ(p.num_vertices(), 8);
  EXPECT_EQ(p.num_faces(), 6);
  EXPECT_EQ(p.num_edges(), 12);
}

TEST(LoadOff, DodecahedronCombinatorics) {
  const Polyhedron& p = dodecahedron();
  EXPECT_EQ(p.num_vertices(), 20);
  EXPECT_EQ(p.num_faces(), 12);
  EXPECT_EQ(p.num_edges(), 30);
}

TEST(LoadOff, EdgeSharedByThreeFacesIsRejected) {
  // A tetrahedron plus an extra triangle reusing edge 0-1.
  const char* text =
      "OFF\n5 5 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0.5 -1 0.5\n"
      "3 0 2 1\n3 0 1 3\n3 1 2 3\n3 0 3 2\n3 0 1 4\n";
  try {
    load_off(text);
    FAIL() << "expected manifold violation";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("manifold"), std::string::npos) << e.what();
  }
}

TEST(LoadOff, ParseErrorsReportLineAndColumn) {
  try {
    load_off("OFF\n4 4 0\n0 0 0\n1 0 zz\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(load_off("PLY\n"), ParseError);
  EXPECT_THROW(load_off("OFF\n8 6 0\n0 0 0\n"), ParseError);
}

TEST(LoadOff, CommentsAndBlankLinesAreSkipped) {
  const char* text =
      "OFF # header\n\n# counts next\n4 4 6\n0 0 0\n1 0 0 # x\n0 1 0\n0 0 1\n"
      "3 0 2 1\n3 0 1 3\n3 1 2 3\n3 0 3 2\n";
  const Polyhedron p = load_off(text);
  EXPECT_EQ(p.num_edges(), 6);
}

TEST(LoadOff, ConvexityViolationNamesVertexAndFace) {
  // Cube with the top face pushed in at one corner: vertex 2 dented inward.
  const char* text =
      "OFF\n8 6 0\n1 1 0\n1 0 0\n0.6 0.6 0.6\n0 1 0\n0 0 0\n0 1 1\n0 0 1\n1 0 1\n"
      "4 1 0 2 7\n4 2 0 3 5\n4 3 0 1 4\n4 4 1 7 6\n4 7 2 5 6\n4 5 3 4 6\n";
  EXPECT_THROW(load_off(text), InputError);
}

TEST(Curvature, CubeVertices) {
  const Polyhedron& p = cube();
  double sum = 0.0;
  for (int v = 0; v < p.num_vertices(); ++v) {
    EXPECT_NEAR(p.curvature(v), kPi / 2, 1e-12);
    sum += p.curvature(v);
  }
  EXPECT_NEAR(sum, 4 * kPi, 1e-12);
}

TEST(Curvature, DodecahedronVertex) {
  const Polyhedron& p = dodecahedron();
  for (int v = 0; v < p.num_vertices(); ++v) EXPECT_NEAR(p.curvature(v), kPi / 5, 1e-12);
}

TEST(Curvature, GaussBonnetOnAllSolids) {
  for (const Polyhedron* p : {&cube(), &tetrahedron(), &octahedron(), &dodecahedron()}) {
    double sum = 0.0;
    for (int v = 0; v < p->num_vertices(); ++v) {
      EXPECT_GT(p->curvature(v), 0.0);
      EXPECT_LT(p->curvature(v), kTwoPi);
      sum += p->curvature(v);
    }
    EXPECT_NEAR(sum, 4 * kPi, 1e-9);
  }
}

TEST(FaceAngle, Corners) {
  EXPECT_NEAR(cube().face_angle(0, cube().face(0)[0]), kPi / 2, 1e-12);
  EXPECT_NEAR(dodecahedron().face_angle(3, dodecahedron().face(3)[2]), 3 * kPi / 5, 1e-12);
  EXPECT_NEAR(tetrahedron().face_angle(1, tetrahedron().face(1)[1]), kPi / 3, 1e-12);
  EXPECT_NEAR(octahedron().face_angle(0, octahedron().face(0)[0]), kPi / 3, 1e-12);
  // Vertex 4 is not a corner of cube face 0.
  EXPECT_THROW(cube().face_angle(0, 4), InputError);
}

TEST(Mesh, OffRoundTripIsBitExact) {
  for (const Polyhedron* p : {&cube(), &dodecahedron()}) {
    const Polyhedron q = load_off(write_off(*p));
    ASSERT_EQ(q.num_vertices(), p->num_vertices());
    for (int v = 0; v < p->num_vertices(); ++v) EXPECT_EQ(q.vertex(v), p->vertex(v));
    EXPECT_EQ(q.faces(), p->faces());
  }
  // Random coordinates survive too.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  std::vector<Vec3> verts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (auto& v : verts) v = v + Vec3{jitter(rng), jitter(rng), jitter(rng)};
  const Polyhedron t = Polyhedron::from_lists(verts, tetrahedron().faces());
  const Polyhedron t2 = load_off(write_off(t));
  for (int v = 0; v < 4; ++v) EXPECT_EQ(t2.vertex(v), t.vertex(v));
}

TEST(Mesh, EdgeLengthsAgreeAcrossFrames) {
  for (const Polyhedron* p : {&cube(), &tetrahedron(), &octahedron(), &dodecahedron()}) {
    for (int e = 0; e < p->num_edges(); ++e) {
      const Edge& ed = p->edge(e);
      double len[2];
      for (int i = 0; i < 2; ++i) {
        const int f = ed.face[i], k = ed.corner[i];
        len[i] = norm(p->corner_coords(f, (k + 1) % p->face_size(f)) - p->corner_coords(f, k));
      }
      EXPECT_NEAR(len[0], len[1], 1e-12 * len[0]);
      EXPECT_NEAR(len[0], norm(p->vertex(ed.v0) - p->vertex(ed.v1)), 1e-12 * len[0]);
    }
  }
}

TEST(Mesh, FanPositionRoundTrip) {
  const Polyhedron& p = dodecahedron();
  for (int v = 0; v < p.num_vertices(); ++v) {
    for (double pos = 0.05; pos < p.total_angle(v); pos += 0.3) {
      auto [f, d] = p.fan_direction(v, pos);
      EXPECT_NEAR(p.fan_position(v, f, d), pos, 1e-12);
    }
  }
}
