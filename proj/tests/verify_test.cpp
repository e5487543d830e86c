#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/verify.hpp"

using namespace qstar;
using namespace qstar::testing;

TEST(PolygonSimple, SquareIsSimple) {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_TRUE(polygon_simple(sq).simple);
}

TEST(PolygonSimple, BowtieIsNotSimple) {
  const std::vector<Vec2> bow{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  const SimplicityResult r = polygon_simple(bow);
  EXPECT_FALSE(r.simple);
  EXPECT_EQ(r.edges, std::make_pair(0, 2));
}

TEST(PolygonSimple, TouchingVertexIsNotSimple) {
  const std::vector<Vec2> p{{0, 0}, {2, 0}, {2, 2}, {1, 0}, {0, 2}};
  EXPECT_FALSE(polygon_simple(p).simple);
}

TEST(PolygonSimple, FoldBackIsNotSimple) {
  const std::vector<Vec2> p{{0, 0}, {2, 0}, {1, 0}, {1, 1}};
  EXPECT_FALSE(polygon_simple(p).simple);
}

TEST(PolygonSimple, RejectsDegenerateInput) {
  const std::vector<Vec2> two{{0, 0}, {1, 0}};
  EXPECT_THROW(polygon_simple(two), InputError);
  const std::vector<Vec2> dup{{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  EXPECT_THROW(polygon_simple(dup), InputError);
}

TEST(BruteForce, MoreFacesNeverLonger) {
  const Polyhedron& p = cube();
  auto [l, r] = split_halves(p, cube_geodesic_loop());
  for (const Half* h : {&l, &r}) {
    for (int v : h->contained_vertices) {
      const BruteForceResult one = brute_force_shortest(p, *h, v, 1);
      const BruteForceResult eight = brute_force_shortest(p, *h, v, 8);
      EXPECT_LE(eight.length, one.length);
      EXPECT_GE(eight.sequences, one.sequences);
    }
  }
  EXPECT_THROW(brute_force_shortest(p, l, l.contained_vertices.front(), 0), InputError);
}

TEST(BruteForce, DefaultFaceBound) {
  EXPECT_EQ(default_max_faces(cube()), 8);
  EXPECT_EQ(default_max_faces(dodecahedron()), 8);
}

TEST(Report, BoundsAndDuplicates) {
  VerificationReport rep;
  rep.add_bound("a", 1e-12, 1e-9, "never shown");
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.find("a")->certificate.empty());
  rep.add_bound("b", 1e-3, 1e-9, "residual too large");
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.find("b")->certificate, "residual too large");
  EXPECT_THROW(rep.add("a", CheckStatus::Pass), std::logic_error);
  rep.add("c", CheckStatus::NotApplicable);
  EXPECT_STREQ(to_string(rep.find("c")->status), "n/a");
}
