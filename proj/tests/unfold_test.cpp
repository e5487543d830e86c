#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/unfold.hpp"
#include "qstar/verify.hpp"

using namespace qstar;
using namespace qstar::testing;

namespace {

struct Developed {
  Half half[2];
  std::vector<CutSegment> cuts[2];
  LoopBreaks breaks;
  PlanarDevelopment dev[2];
};

Developed develop_both(const Polyhedron& p, const QuasigeodesicLoop& q) {
  Developed r;
  std::tie(r.half[0], r.half[1]) = split_halves(p, q);
  for (int i = 0; i < 2; ++i) r.cuts[i] = all_cuts(p, r.half[i]);
  r.breaks = loop_breaks(p, q, r.half[0], r.half[1], r.cuts[0], r.cuts[1]);
  for (int i = 0; i < 2; ++i) r.dev[i] = develop_half(p, insert_triangles(p, q, r.half[i], r.cuts[i], r.breaks));
  return r;
}

// Triangle areas from cut lengths and curvatures, one or two pieces.
double triangle_area(const Polyhedron& p, const std::vector<CutSegment>& cuts) {
  double a = 0.0;
  for (const CutSegment& c : cuts) {
    const double w = p.curvature(c.vertex), l = c.length;
    a += w < kPi ? 0.5 * l * l * std::sin(w) : l * l * std::sin(0.5 * w);
  }
  return a;
}

double shoelace(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

void expect_convex(const PlanarDevelopment& d) {
  EXPECT_NEAR(d.total_turn, kTwoPi, 1e-7);
  EXPECT_LT(d.closure, 1e-9);
  EXPECT_GE(d.min_turn, -1e-9);
  EXPECT_TRUE(polygon_simple(d.boundary).simple);
}

int loop_index_of_vertex(const QuasigeodesicLoop& q, int v) {
  for (int i = 0; i < q.size(); ++i)
    if (q.points[i].locus.kind == LocusKind::Vertex && q.points[i].locus.id == v) return i;
  return -1;
}

// Turn of the base chain at x from rigid rotations: the sector beyond cut i is
// rotated by omega_i about the image of v_i; pieces split the rotation.
double rotation_chain_turn(const std::vector<XCut>& xs, const std::vector<double>& legs) {
  using C = std::complex<double>;
  std::vector<C> chain{0.0};
  C rot = 1.0, shift = 0.0;  // z -> rot * z + shift
  for (int i = static_cast<int>(xs.size()) - 1; i >= 0; --i) {
    const C center = rot * std::polar(legs[i], xs[i].offset) + shift;
    for (int k = 0; k < xs[i].pieces; ++k) {
      const C r = std::polar(1.0, xs[i].omega / xs[i].pieces);
      rot = r * rot;
      shift = r * (shift - center) + center;
      chain.push_back(shift);
    }
  }
  double turn = 0.0;
  for (std::size_t i = 1; i + 1 < chain.size(); ++i)
    turn -= std::arg((chain[i + 1] - chain[i]) / (chain[i] - chain[i - 1]));
  return turn;
}

}  // namespace

TEST(CurvatureTriangle, SinglePiece) {
  const CurvatureTriangle t = make_triangle(0, 0.5 * kPi, 1.0);
  EXPECT_EQ(t.pieces, 1);
  EXPECT_NEAR(t.apex(), 0.5 * kPi, 1e-15);
  EXPECT_NEAR(t.base_angle(), 0.25 * kPi, 1e-15);
  EXPECT_NEAR(t.base_length(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(t.area(), 0.5, 1e-15);
}

TEST(CurvatureTriangle, TwoPiecesAtLargeCurvature) {
  const CurvatureTriangle t = make_triangle(0, 1.2 * kPi, 2.0);
  EXPECT_EQ(t.pieces, 2);
  EXPECT_NEAR(t.apex(), 0.6 * kPi, 1e-15);
  EXPECT_NEAR(t.base_angle(), 0.5 * kPi - 0.3 * kPi, 1e-15);
  EXPECT_EQ(make_triangle(0, kPi, 1.0).pieces, 2);
}

TEST(Tau21, FormulaMatchesRotations) {
  const double deg = kPi / 180.0;
  // k = 2, beta_1 = 0.4, omega = 10 degrees each.
  std::vector<XCut> xs{{1.7, 10 * deg, 1}, {2.1, 10 * deg, 1}};
  EXPECT_NEAR(tau21_formula(xs), 0.4 - 10 * deg, 1e-12);
  EXPECT_NEAR(rotation_chain_turn(xs, {1.0, 1.3}), tau21_formula(xs), 1e-12);
  // k = 3 with mixed piece counts.
  xs = {{1.6, 0.3, 1}, {1.9, 3.5, 2}, {2.5, 0.2, 1}};
  EXPECT_NEAR(rotation_chain_turn(xs, {0.7, 0.4, 1.1}), tau21_formula(xs), 1e-12);
  xs = {{1.6, 3.3, 2}, {2.0, 0.5, 1}};
  EXPECT_NEAR(rotation_chain_turn(xs, {0.6, 0.9}), tau21_formula(xs), 1e-12);
  // k = 1: a single base has no interior corner.
  EXPECT_NEAR(tau21_formula({{1.7, 0.5, 1}}), 0.0, 1e-15);
  EXPECT_NEAR(rotation_chain_turn({{1.7, 0.5, 1}}, {1.0}), 0.0, 1e-15);
}

TEST(Unfold, CubeQuasigeodesicHalvesAreConvex) {
  const Polyhedron& p = cube();
  const QuasigeodesicLoop q = cube_quasigeodesic();
  const Developed r = develop_both(p, q);
  for (int i = 0; i < 2; ++i) {
    expect_convex(r.dev[i]);
    EXPECT_FALSE(r.dev[i].disk.loop_side);
    int extra = 0;
    for (const auto& t : r.dev[i].disk.triangles) extra += t.pieces;
    EXPECT_EQ(r.dev[i].size(), r.breaks.size() + extra);
    EXPECT_NEAR(r.dev[i].area(), 0.0 + triangle_area(p, r.cuts[i]) + (i == 0 ? 1.5 : 4.5), 1e-12);
  }
}

TEST(Unfold, CubeSeamFromV5ToFootOfV6IsValid) {
  const Polyhedron& p = cube();
  const QuasigeodesicLoop q = cube_quasigeodesic();
  const Developed r = develop_both(p, q);
  const int i5 = loop_index_of_vertex(q, 5);
  ASSERT_GE(i5, 0);
  int v6 = -1;
  for (std::size_t c = 0; c < r.cuts[1].size(); ++c)
    if (r.cuts[1][c].vertex == 6) v6 = static_cast<int>(c);
  ASSERT_GE(v6, 0);
  const LoopPosition f6 = foot_position(q, r.half[1], r.cuts[1][v6]);
  int j = -1;
  for (int b = 0; b < r.breaks.size(); ++b) {
    const int nb = (b + 1) % r.breaks.size();
    const bool starts_at_v5 = r.breaks.loop_index[b] == i5;
    const bool ends_at_foot = r.breaks.pos[nb].segment == f6.segment && std::abs(r.breaks.pos[nb].t - f6.t) < 1e-9;
    if (starts_at_v5 && ends_at_foot) j = b;
  }
  ASSERT_GE(j, 0);
  const SeamCandidate s = seam_candidate(r.dev[0], r.dev[1], j);
  EXPECT_TRUE(s.valid);
  EXPECT_NEAR(s.length, 0.5 * std::sqrt(2.0), 1e-12);
  const Seam seam = select_seam(r.dev[0], r.dev[1], q);
  EXPECT_TRUE(seam.chosen.valid);
  EXPECT_FALSE(seam.fallback);
  const UnfoldedPolygon u = join(r.dev[0], r.dev[1], seam);
  EXPECT_TRUE(polygon_simple(u.polygon).simple);
  EXPECT_NEAR(shoelace(u.polygon), 6.0 + triangle_area(p, r.cuts[0]) + triangle_area(p, r.cuts[1]), 6e-9);
  EXPECT_TRUE(polygon_simple(u.surface).simple);
  EXPECT_NEAR(shoelace(u.surface), 6.0, 6e-9);
}

TEST(Unfold, TracedCubeLoopHasReflexCornersOnlyAtX) {
  const Polyhedron& p = cube();
  const QuasigeodesicLoop q = cube_geodesic_loop();
  ASSERT_EQ(q.kind, LoopKind::QuasigeodesicLoop);
  const Developed r = develop_both(p, q);
  const int ls = q.beta_side == Side::Left ? 0 : 1;
  const PlanarDevelopment& d = r.dev[ls];
  EXPECT_TRUE(d.disk.loop_side);
  EXPECT_FALSE(r.dev[1 - ls].disk.loop_side);
  expect_convex(r.dev[1 - ls]);
  EXPECT_NEAR(d.total_turn, kTwoPi, 1e-7);
  EXPECT_TRUE(polygon_simple(d.boundary).simple);
  ASSERT_FALSE(d.reflex.empty());
  for (int c : d.reflex) EXPECT_TRUE(d.disk.corners[c].x_image);
  const ChainReport cr = turn_of_C21(d);
  EXPECT_EQ(cr.k, 0);
  EXPECT_THROW(turn_of_C21(r.dev[1 - ls]), InputError);

  const Seam seam = select_seam(r.dev[0], r.dev[1], q);
  EXPECT_TRUE(seam.chosen.valid);
  EXPECT_TRUE(seam.chosen.y_rule);
  EXPECT_FALSE(seam.fallback);
  int valid = 0;
  for (const SeamCandidate& c : seam.candidates) valid += c.valid;
  EXPECT_GE(valid, 2);
  const UnfoldedPolygon u = join(r.dev[0], r.dev[1], seam);
  EXPECT_TRUE(polygon_simple(u.polygon).simple);
  EXPECT_NEAR(shoelace(u.surface), 6.0, 6e-9);
}

TEST(Unfold, LoopWithCutToX) {
  const Polyhedron& p = cube();
  const QuasigeodesicLoop q = cube_loop_with_x_cut();
  const Developed r = develop_both(p, q);
  const int ls = q.beta_side == Side::Left ? 0 : 1;
  const ChainReport cr = turn_of_C21(r.dev[ls]);
  EXPECT_GE(cr.k, 1);
  EXPECT_NEAR(cr.tau21_chain, cr.tau21_formula, 1e-9);
  EXPECT_LE(cr.tau21_chain, kPi + 1e-9);
  EXPECT_LE(cr.max_subchain_turn, kPi + 1e-9);
  EXPECT_GE(cr.alpha1, 0.5 * kPi - 1e-9);
  EXPECT_GE(cr.alpha2, 0.5 * kPi - 1e-9);
  for (int c : r.dev[ls].reflex) EXPECT_TRUE(r.dev[ls].disk.corners[c].x_image);
  const Seam seam = select_seam(r.dev[0], r.dev[1], q);
  const UnfoldedPolygon u = join(r.dev[0], r.dev[1], seam);
  EXPECT_TRUE(polygon_simple(u.polygon).simple);
}

TEST(Unfold, DodecahedronGeodesic) {
  const Polyhedron& p = dodecahedron();
  const QuasigeodesicLoop q = dodecahedron_geodesic();
  const Developed r = develop_both(p, q);
  expect_convex(r.dev[0]);
  expect_convex(r.dev[1]);
  const Seam seam = select_seam(r.dev[0], r.dev[1], q);
  const UnfoldedPolygon u = join(r.dev[0], r.dev[1], seam);
  EXPECT_TRUE(polygon_simple(u.polygon).simple);
  const double expected = p.surface_area() + triangle_area(p, r.cuts[0]) + triangle_area(p, r.cuts[1]);
  EXPECT_NEAR(shoelace(u.polygon), expected, 1e-9 * expected);
}

TEST(Unfold, FaceBoundaryHalfHasNoTriangles) {
  const Polyhedron& p = cube();
  // Boundary of face 2 (z = 0): a closed quasigeodesic with one face inside.
  const QuasigeodesicLoop q = loop_from_waypoints(
      p, {SurfacePoint::at_vertex(3), SurfacePoint::at_vertex(4), SurfacePoint::at_vertex(1),
          SurfacePoint::at_vertex(0)});
  const Developed r = develop_both(p, q);
  int empty = -1;
  for (int i = 0; i < 2; ++i)
    if (r.cuts[i].empty()) empty = i;
  ASSERT_GE(empty, 0);
  EXPECT_TRUE(r.dev[empty].disk.triangles.empty());
  EXPECT_NEAR(r.dev[empty].area(), 1.0, 1e-15);
}

TEST(Conservation, ResidualsAndScaling) {
  const Polyhedron& p = cube();
  std::ostringstream off;
  off << "OFF\n8 6 0\n";
  for (int v = 0; v < p.num_vertices(); ++v)
    off << 2 * p.vertex(v).x << ' ' << 2 * p.vertex(v).y << ' ' << 2 * p.vertex(v).z << '\n';
  off << "4 1 0 2 7\n4 2 0 3 5\n4 3 0 1 4\n4 4 1 7 6\n4 7 2 5 6\n4 5 3 4 6\n";
  const Polyhedron big = load_off(off.str());
  const auto q_of = [](const Polyhedron& poly) {
    return loop_from_waypoints(poly, {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(5),
                                      SurfacePoint::at_vertex(7)});
  };
  double area[2];
  for (int s = 0; s < 2; ++s) {
    const Polyhedron& poly = s == 0 ? p : big;
    const QuasigeodesicLoop q = q_of(poly);
    const Developed r = develop_both(poly, q);
    const UnfoldedPolygon u = join(r.dev[0], r.dev[1], select_seam(r.dev[0], r.dev[1], q));
    const ConservationResult c = conservation(poly, u, r.dev[0], r.dev[1]);
    EXPECT_LE(c.area_residual, 1e-9 * 6.0 * (s + 1) * (s + 1));
    EXPECT_LE(c.cut_pairing, 1e-12 * (s + 1));
    EXPECT_LE(c.surface_area_residual, 1e-9 * 6.0 * (s + 1) * (s + 1));
    area[s] = shoelace(u.polygon);
  }
  EXPECT_NEAR(area[1], 4.0 * area[0], 1e-9);
}
