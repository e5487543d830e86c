#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/qloop.hpp"

using namespace qstar;
using namespace qstar::testing;

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void expect_gauss_bonnet(const Polyhedron& p, const QuasigeodesicLoop& q) {
  auto [l, r] = split_halves(p, q);
  EXPECT_NEAR(l.tau_q + l.omega_q, kTwoPi, 1e-7);
  EXPECT_NEAR(r.tau_q + r.omega_q, kTwoPi, 1e-7);
  double on_loop = 0.0;
  for (const LoopPoint& pt : q.points)
    if (pt.locus.kind == LocusKind::Vertex) on_loop += p.curvature(pt.locus.id);
  EXPECT_NEAR(l.omega_q + r.omega_q + on_loop, 2.0 * kTwoPi, 1e-7);
  for (int b = 0; b < l.boundary_size(); ++b) {
    const int i = l.boundary_loop_index[b];
    EXPECT_NEAR(l.interior_angle[b], q.points[i].left, 1e-9);
  }
  for (int b = 0; b < r.boundary_size(); ++b) {
    const int i = r.boundary_loop_index[b];
    EXPECT_NEAR(r.interior_angle[b], q.points[i].right, 1e-9);
  }
}

}  // namespace

TEST(ConstructLoop, CubeBandIsClosedGeodesic) {
  const QuasigeodesicLoop q = construct_loop(cube(), SurfacePoint::on_face(0, {0.5, 0.5}), 0.0);
  EXPECT_EQ(q.kind, LoopKind::ClosedGeodesic);
  EXPECT_NEAR(q.length(), 4.0, 1e-12);
  ASSERT_GE(q.loop_point, 0);
  EXPECT_NEAR(q.points[q.loop_point].left, kPi, 1e-12);
  EXPECT_NEAR(q.points[q.loop_point].right, kPi, 1e-12);
  EXPECT_EQ(classify(q).kind, LoopKind::ClosedGeodesic);
  auto [l, r] = split_halves(cube(), q);
  EXPECT_EQ(l.contained_vertices.size(), 4u);
  EXPECT_EQ(r.contained_vertices.size(), 4u);
  EXPECT_NEAR(l.tau_q, 0.0, 1e-12);
  expect_gauss_bonnet(cube(), q);
}

TEST(GivenLoop, CubeThreeVertexLoopIsClosedQuasigeodesic) {
  const QuasigeodesicLoop q = cube_quasigeodesic();
  EXPECT_EQ(q.kind, LoopKind::ClosedQuasigeodesic);
  EXPECT_EQ(q.loop_point, -1);
  // At v5: π to the right, π/2 to the left.
  EXPECT_NEAR(q.points[1].right, kPi, 1e-12);
  EXPECT_NEAR(q.points[1].left, 0.5 * kPi, 1e-12);
  EXPECT_NEAR(q.length(), 3.0 * std::sqrt(2.0), 1e-12);
}

TEST(SplitHalves, CubeThreeVertexLoop) {
  const QuasigeodesicLoop q = cube_quasigeodesic();
  auto [l, r] = split_halves(cube(), q);
  EXPECT_EQ(l.contained_vertices, std::vector<int>{2});
  EXPECT_EQ(sorted(r.contained_vertices), (std::vector<int>{1, 3, 4, 6}));
  EXPECT_NEAR(l.omega_q, 0.5 * kPi, 1e-12);
  EXPECT_NEAR(r.omega_q, 2.0 * kPi, 1e-12);
  EXPECT_LE(l.omega_q, kTwoPi + 1e-9);
  EXPECT_LE(r.omega_q, kTwoPi + 1e-9);
  expect_gauss_bonnet(cube(), q);
}

TEST(ConstructLoop, CubeLoopWithExceptionalPoint) {
  const QuasigeodesicLoop q = cube_geodesic_loop();
  ASSERT_EQ(q.kind, LoopKind::QuasigeodesicLoop);
  const LoopPoint& x = q.points.at(q.loop_point);
  EXPECT_NEAR(x.right, 1.5 * kPi, 1e-9);
  EXPECT_NEAR(x.left, 0.5 * kPi, 1e-9);
  EXPECT_NEAR(q.beta, 1.5 * kPi, 1e-9);
  EXPECT_EQ(q.beta_side, Side::Right);
  for (const LoopPoint& pt : q.points) EXPECT_NE(pt.locus.kind, LocusKind::Vertex);

  const LoopReport rep = classify(q);
  EXPECT_EQ(rep.kind, LoopKind::QuasigeodesicLoop);
  EXPECT_EQ(rep.loop_point, q.loop_point);

  auto [l, r] = split_halves(cube(), q);
  EXPECT_EQ(l.contained_vertices.size(), 3u);
  EXPECT_EQ(r.contained_vertices.size(), 5u);
  EXPECT_NEAR(l.tau_q, 0.5 * kPi, 1e-9);
  EXPECT_NEAR(l.omega_q, 1.5 * kPi, 1e-12);
  expect_gauss_bonnet(cube(), q);
}

TEST(ConstructLoop, DiagonalStartMeetsAtVertex) {
  const Polyhedron& p = cube();
  // Face 1 is y = 1 with corners (2, 0, 3, 5); start mid-diagonal v5 -> v0.
  const Vec2 a = p.corner_coords(1, 1), b = p.corner_coords(1, 3);
  const Vec2 d = a - b;
  LoopOptions opts;
  opts.rule = VertexRule::RightPi;
  EXPECT_THROW(construct_loop(p, SurfacePoint::on_face(1, (a + b) * 0.5), std::atan2(d.y, d.x), opts),
               GeometryError);
}

TEST(ConstructLoop, RejectsVertexSeed) {
  EXPECT_THROW(construct_loop(cube(), SurfacePoint::at_vertex(0), 0.0), InputError);
}

TEST(ConstructLoop, DodecahedronEquatorialGeodesic) {
  const Polyhedron& p = dodecahedron();
  const QuasigeodesicLoop q = dodecahedron_geodesic();
  ASSERT_EQ(q.kind, LoopKind::ClosedGeodesic);
  std::vector<int> band;
  for (int i = 0; i < q.size(); ++i)
    if (band.empty() || band.back() != q.segment_faces[i]) band.push_back(q.segment_faces[i]);
  if (band.size() > 1 && band.front() == band.back()) band.pop_back();
  EXPECT_EQ(band.size(), 10u);

  // Develop the band once around: the start point's image in the repeated
  // first face is a pure translation along the loop direction.
  std::vector<int> chain = band;
  chain.push_back(band.front());
  const Development dev = unroll_chain(p, chain);
  const int f0 = band.front();
  int start = -1;
  for (int i = 0; i < q.size(); ++i)
    if (q.segment_faces[i] == f0 && q.segment_faces[(i + q.size() - 1) % q.size()] != f0) start = i;
  ASSERT_GE(start, 0);
  const Vec2 s = coords_in_face(p, q.points[start].locus, f0);
  const Vec2 s0 = dev.image(0, s), s1 = dev.image(chain.size() - 1, s);
  EXPECT_NEAR(norm(s1 - s0), q.length(), 1e-9 * q.length());
  EXPECT_NEAR(dev.placements.back().angle(), 0.0, 1e-9);
  EXPECT_NEAR(q.length(), 10.0, 1e-9);

  auto [l, r] = split_halves(p, q);
  EXPECT_EQ(l.contained_vertices.size(), 10u);
  EXPECT_EQ(r.contained_vertices.size(), 10u);
  expect_gauss_bonnet(p, q);
}

TEST(GivenLoop, RejectsSegmentsOutsideAFace) {
  EXPECT_THROW(loop_from_waypoints(cube(), {SurfacePoint::at_vertex(2), SurfacePoint::at_vertex(4),
                                            SurfacePoint::at_vertex(0)}),
               InputError);
}

TEST(GivenLoop, RejectsTwoExceptionalPoints) {
  // Square around face 0 has four corners of angle π/2 < π on the left but
  // 3π/2 on the right.
  EXPECT_THROW(loop_from_waypoints(cube(), {SurfacePoint::on_face(0, {0.2, 0.2}),
                                            SurfacePoint::on_face(0, {0.8, 0.2}),
                                            SurfacePoint::on_face(0, {0.8, 0.8}),
                                            SurfacePoint::on_face(0, {0.2, 0.8})}),
               InputError);
}

TEST(GivenLoop, RoundTripsConstructedLoop) {
  const QuasigeodesicLoop q = cube_geodesic_loop();
  std::vector<SurfacePoint> pts;
  for (const LoopPoint& pt : q.points) pts.push_back(pt.locus);
  const QuasigeodesicLoop r = loop_from_waypoints(cube(), pts, q.segment_faces, q.loop_point);
  ASSERT_EQ(r.size(), q.size());
  EXPECT_EQ(r.kind, q.kind);
  for (int i = 0; i < q.size(); ++i) {
    EXPECT_EQ(r.points[i].left, q.points[i].left);
    EXPECT_EQ(r.points[i].right, q.points[i].right);
  }
}

TEST(SplitHalves, RandomLoopsSatisfyGaussBonnet) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.05, 0.95), angle(0.0, kTwoPi);
  for (const Polyhedron* p : {&cube(), &octahedron(), &dodecahedron()}) {
    int built = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const int f = static_cast<int>(rng() % p->num_faces());
      // Random interior point as a convex combination of corners.
      Vec2 uv{};
      double w = 0.0;
      for (Vec2 c : p->face_coords(f)) {
        const double a = unit(rng);
        uv = uv + c * a;
        w += a;
      }
      uv = uv / w;
      QuasigeodesicLoop q;
      try {
        q = construct_loop(*p, SurfacePoint::on_face(f, uv), angle(rng));
      } catch (const GeometryError&) {
        continue;
      }
      ++built;
      for (int i = 0; i < q.size(); ++i) {
        if (i == q.loop_point) continue;
        EXPECT_LE(q.points[i].left, kPi + 1e-9);
        EXPECT_LE(q.points[i].right, kPi + 1e-9);
      }
      expect_gauss_bonnet(*p, q);
    }
    EXPECT_GT(built, 30);
  }
}
