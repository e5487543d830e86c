#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/spath.hpp"
#include "qstar/verify.hpp"

using namespace qstar;
using namespace qstar::testing;

namespace {

void expect_matches_oracle(const Polyhedron& p, const QuasigeodesicLoop& q) {
  auto [l, r] = split_halves(p, q);
  for (const Half* h : {&l, &r}) {
    for (int v : h->contained_vertices) {
      if (p.is_flat(v)) continue;
      const CutSegment c = shortest_to_q(p, *h, v);
      const BruteForceResult b = brute_force_shortest(p, *h, v, default_max_faces(p));
      EXPECT_NEAR(c.length, b.length, 1e-9 * b.length) << "vertex " << v;
      const Vec3 foot = position(p, c.foot);
      EXPECT_NEAR(norm(foot - c.points.back()), 0.0, 1e-9);
    }
  }
}

void expect_disjoint_and_orthogonal(const Polyhedron& p, const QuasigeodesicLoop& q) {
  auto [l, r] = split_halves(p, q);
  for (const Half* h : {&l, &r}) {
    const auto cuts = all_cuts(p, *h);
    EXPECT_FALSE(find_crossing_cuts(*h, cuts).has_value());
    for (const CutSegment& c : cuts) {
      const auto dev = check_orthogonality(*h, c);
      if (dev) EXPECT_LT(*dev, 1e-9) << "vertex " << c.vertex;
    }
  }
}

}  // namespace

TEST(ShortestPath, CubeQuasigeodesicKnownCuts) {
  const Polyhedron& p = cube();
  auto [l, r] = split_halves(p, cube_quasigeodesic());
  const CutSegment c2 = shortest_to_q(p, l, 2);
  // Corner of a unit square to its opposite diagonal, in each of three faces.
  EXPECT_NEAR(c2.length, std::sqrt(0.5), 1e-12);
  EXPECT_EQ(c2.tied, 3);

  const CutSegment c6 = shortest_to_q(p, r, 6);
  EXPECT_NEAR(c6.length, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(norm(c6.points.back() - Vec3{0.5, 0.5, 1.0}), 0.0, 1e-12);

  EXPECT_NEAR(shortest_to_q(p, r, 1).length, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(shortest_to_q(p, r, 3).length, std::sqrt(0.5), 1e-12);
  const CutSegment c4 = shortest_to_q(p, r, 4);
  EXPECT_NEAR(c4.length, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(c4.tied, 3);
}

TEST(ShortestPath, RejectsVertexOutsideHalf) {
  const Polyhedron& p = cube();
  auto [l, r] = split_halves(p, cube_quasigeodesic());
  EXPECT_THROW(shortest_to_q(p, l, 4), InputError);
  EXPECT_THROW(shortest_to_q(p, l, 0), InputError);
  EXPECT_THROW(brute_force_shortest(p, l, 4, 8), InputError);
}

TEST(ShortestPath, MatchesOracleOnGivenLoops) {
  expect_matches_oracle(cube(), cube_quasigeodesic());
  expect_matches_oracle(tetrahedron(), tetrahedron_geodesic());
  expect_matches_oracle(dodecahedron(), dodecahedron_geodesic());
  expect_matches_oracle(octahedron(), octahedron_equator());
}

TEST(ShortestPath, OctahedronApexesReachTheEquatorAtFaceHeight) {
  const Polyhedron& p = octahedron();
  auto [l, r] = split_halves(p, octahedron_equator());
  for (const Half* h : {&l, &r}) {
    ASSERT_EQ(h->contained_vertices.size(), 1u);
    const CutSegment c = shortest_to_q(p, *h, h->contained_vertices[0]);
    // Height of an equilateral triangle of side sqrt(2), attained in each of the four faces.
    EXPECT_NEAR(c.length, std::sqrt(1.5), 1e-12);
    EXPECT_EQ(c.tied, 4);
  }
}

TEST(ShortestPath, MatchesOracleOnTracedLoops) {
  expect_matches_oracle(cube(), cube_geodesic_loop());
  expect_matches_oracle(cube(), cube_loop_with_x_cut());
  for (const Polyhedron* p : {&cube(), &octahedron(), &dodecahedron()}) {
    int done = 0;
    for (int f = 0; f < 5; ++f) {
      QuasigeodesicLoop q;
      try {
        q = construct_loop(*p, SurfacePoint::on_face(f, seed_point(*p, f)), 0.3 + f);
      } catch (const GeometryError&) {
        continue;
      }
      expect_matches_oracle(*p, q);
      ++done;
    }
    EXPECT_GE(done, 3);
  }
}

TEST(ShortestPath, CutsAreDisjointAndOrthogonal) {
  expect_disjoint_and_orthogonal(cube(), cube_quasigeodesic());
  expect_disjoint_and_orthogonal(cube(), cube_geodesic_loop());
  expect_disjoint_and_orthogonal(cube(), cube_loop_with_x_cut());
  expect_disjoint_and_orthogonal(tetrahedron(), tetrahedron_geodesic());
  expect_disjoint_and_orthogonal(dodecahedron(), dodecahedron_geodesic());
}

TEST(ShortestPath, PerturbedFootIsNotOrthogonal) {
  const Polyhedron& p = cube();
  auto [l, r] = split_halves(p, cube_quasigeodesic());
  CutSegment c = shortest_to_q(p, r, 6);
  ASSERT_FALSE(c.foot_at_node);
  ASSERT_TRUE(check_orthogonality(r, c).has_value());
  c.last_from = c.last_from + Vec2{0.05, 0.0};
  EXPECT_GT(*check_orthogonality(r, c), 1e-3);
}

TEST(ShortestPath, CutToLoopPointIsOrderedLast) {
  const Polyhedron& p = cube();
  const QuasigeodesicLoop q = cube_loop_with_x_cut();
  auto [l, r] = split_halves(p, q);
  int at_x = 0;
  for (const Half* h : {&l, &r}) {
    const auto cuts = all_cuts(p, *h);
    bool seen = false;
    for (const CutSegment& c : cuts) {
      if (c.hits_loop_point) {
        seen = true;
        ++at_x;
      } else {
        EXPECT_FALSE(seen) << "cut to the loop point precedes vertex " << c.vertex;
      }
    }
  }
  EXPECT_GE(at_x, 1);
}

TEST(ShortestPath, SampledLoopIsNoCloser) {
  const Polyhedron& p = cube();
  auto [l, r] = split_halves(p, cube_geodesic_loop());
  for (const Half* h : {&l, &r}) {
    for (int v : h->contained_vertices) {
      const CutSegment c = shortest_to_q(p, *h, v);
      EXPECT_GE(min_sampled_distance(p, *h, v, 64, 8), c.length - 1e-12);
    }
  }
}

TEST(ShortestPath, SerialAndParallelAgree) {
  const Polyhedron& p = dodecahedron();
  auto [l, r] = split_halves(p, dodecahedron_geodesic());
  const auto a = all_cuts(p, l);
  const auto b = all_cuts_parallel(p, l);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].vertex, b[i].vertex);
    EXPECT_EQ(a[i].length, b[i].length);
    EXPECT_EQ(a[i].face_seq, b[i].face_seq);
  }
}
