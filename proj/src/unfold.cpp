#include "qstar/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstar/errors.hpp"
#include "qstar/verify.hpp"

namespace qstar {

CurvatureTriangle make_triangle(int vertex, double omega, double leg) {
  return {vertex, omega, leg, omega < kPi ? 1 : 2};
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::QSegment:
      return "q-seg";
    case EdgeKind::TriangleBase:
      return "tri-base";
  }
  return "?";
}

double LoopBreaks::interval_length(int j) const {
  const int n = size();
  double d = arc[(j + 1) % n] - arc[j];
  if (d <= 0.0) d += total;
  return d;
}

namespace {

std::vector<double> cumulative(const QuasigeodesicLoop& loop) {
  std::vector<double> cum(loop.size() + 1, 0.0);
  for (int i = 0; i < loop.size(); ++i) cum[i + 1] = cum[i] + loop.segment_length(i);
  return cum;
}

bool is_break_node(const QuasigeodesicLoop& loop, int i, double tol_angle) {
  const LoopPoint& p = loop.points[i];
  return p.locus.kind == LocusKind::Vertex || i == loop.loop_point || std::abs(p.left - kPi) > tol_angle ||
         std::abs(p.right - kPi) > tol_angle;
}

int find_break(const LoopBreaks& br, double arc, double tol) {
  for (int j = 0; j < br.size(); ++j) {
    double d = std::abs(br.arc[j] - arc);
    d = std::min(d, br.total - d);
    if (d <= tol) return j;
  }
  return -1;
}

double arc_of(const std::vector<double>& cum, const QuasigeodesicLoop& loop, LoopPosition p) {
  return cum[p.segment] + p.t * loop.segment_length(p.segment);
}

}  // namespace

LoopPosition foot_position(const QuasigeodesicLoop& loop, const Half& H, const CutSegment& c) {
  const int n = loop.size();
  const int i = H.boundary_loop_index.at(c.foot_side);
  if (c.foot_at_node) return {i, 0.0};
  if (H.side == Side::Left) return {i, c.foot_s};
  return {(i - 1 + n) % n, 1.0 - c.foot_s};
}

LoopBreaks loop_breaks(const Polyhedron& poly, const QuasigeodesicLoop& loop, const Half& left,
                       const Half& right, const std::vector<CutSegment>& left_cuts,
                       const std::vector<CutSegment>& right_cuts) {
  const std::vector<double> cum = cumulative(loop);
  const double tol = poly.tol_locus();
  struct Item {
    double arc;
    LoopPosition pos;
    int loop_index;
  };
  std::vector<Item> items;
  for (int i = 0; i < loop.size(); ++i)
    if (is_break_node(loop, i, poly.tolerances().angle)) items.push_back({cum[i], {i, 0.0}, i});
  for (int s = 0; s < 2; ++s) {
    const Half& H = s == 0 ? left : right;
    for (const CutSegment& c : s == 0 ? left_cuts : right_cuts) {
      const LoopPosition p = foot_position(loop, H, c);
      items.push_back({arc_of(cum, loop, p), p, p.t == 0.0 ? p.segment : -1});
    }
  }
  if (items.empty()) items.push_back({0.0, {0, 0.0}, 0});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.arc < b.arc; });

  LoopBreaks br;
  br.total = cum.back();
  for (const Item& it : items) {
    const int j = find_break(br, it.arc, tol);
    if (j >= 0) {
      if (br.loop_index[j] < 0 && it.loop_index >= 0) {
        br.pos[j] = it.pos;
        br.arc[j] = it.arc;
        br.loop_index[j] = it.loop_index;
      }
      continue;
    }
    br.pos.push_back(it.pos);
    br.arc.push_back(it.arc);
    br.loop_index.push_back(it.loop_index);
  }
  // Snap feet lying within tolerance of a loop node onto the node.
  for (int j = 0; j < br.size(); ++j) {
    if (br.loop_index[j] >= 0) continue;
    for (int i = 0; i < loop.size(); ++i) {
      double d = std::abs(cum[i] - br.arc[j]);
      d = std::min(d, br.total - d);
      if (d <= tol) {
        br.pos[j] = {i, 0.0};
        br.arc[j] = cum[i];
        br.loop_index[j] = i;
      }
    }
  }
  return br;
}

FlatDisk insert_triangles(const Polyhedron& poly, const QuasigeodesicLoop& loop, const Half& H,
                          const std::vector<CutSegment>& cuts, const LoopBreaks& breaks) {
  const std::vector<double> cum = cumulative(loop);
  const int K = breaks.size();
  FlatDisk disk;
  disk.side = H.side;
  disk.loop_side = loop.kind == LoopKind::QuasigeodesicLoop && H.side == loop.beta_side;
  disk.cuts = cuts;

  std::vector<double> theta(K, kPi);
  for (int j = 0; j < K; ++j)
    if (breaks.loop_index[j] >= 0) theta[j] = H.interior_angle.at(H.position_of_loop_index(breaks.loop_index[j]));

  struct Attached {
    int cut;
    double offset;
  };
  std::vector<std::vector<Attached>> at(K);
  for (int ci = 0; ci < static_cast<int>(cuts.size()); ++ci) {
    const CutSegment& c = cuts[ci];
    disk.triangles.push_back(make_triangle(c.vertex, poly.curvature(c.vertex), c.length));
    const LoopPosition p = foot_position(loop, H, c);
    const int j = find_break(breaks, arc_of(cum, loop, p), poly.tol_locus());
    if (j < 0) throw GeometryError("cut foot of vertex " + std::to_string(c.vertex) + " is not a loop break");
    double offset = c.offset;
    if (!c.foot_at_node && breaks.loop_index[j] >= 0 && c.foot_s > 0.5) offset += theta[j] - kPi;
    at[j].push_back({ci, offset});
  }

  const int xb = loop.loop_point >= 0 ? find_break(breaks, cum[loop.loop_point], poly.tol_locus()) : -1;
  for (int w = 0; w < K; ++w) {
    const int j = H.side == Side::Left ? w : (K - w) % K;
    auto& list = at[j];
    std::sort(list.begin(), list.end(), [](const Attached& a, const Attached& b) { return a.offset > b.offset; });
    const bool is_x = j == xb;
    if (is_x && disk.loop_side) {
      disk.x2 = static_cast<int>(disk.corners.size());
      disk.x_angle = theta[j];
    }
    double prev = theta[j];
    double extra = 0.0;
    for (const Attached& a : list) {
      const CurvatureTriangle& t = disk.triangles[a.cut];
      disk.corners.push_back({extra + (prev - a.offset) + t.base_angle(), j, -1, is_x});
      for (int k = 0; k < t.pieces; ++k) {
        if (k > 0) disk.corners.push_back({kPi - t.apex(), -1, a.cut, false});
        disk.edges.push_back({EdgeKind::TriangleBase, t.base_length(), -1, a.cut, k});
      }
      prev = a.offset;
      extra = t.base_angle();
    }
    if (is_x && disk.loop_side) disk.x1 = static_cast<int>(disk.corners.size());
    disk.corners.push_back({extra + prev, j, -1, is_x});
    const int interval = H.side == Side::Left ? j : (j - 1 + K) % K;
    disk.edges.push_back({EdgeKind::QSegment, breaks.interval_length(interval), interval, -1, 0});
  }
  return disk;
}

double PlanarDevelopment::turn(int i) const {
  const int n = size();
  const Vec2 a = boundary[i] - boundary[(i - 1 + n) % n];
  const Vec2 b = boundary[(i + 1) % n] - boundary[i];
  return std::atan2(cross(a, b), dot(a, b));
}

std::vector<int> PlanarDevelopment::chain12() const {
  std::vector<int> out;
  if (!disk.loop_side) return out;
  const int n = size();
  int i = disk.x1;
  do {
    out.push_back(i);
    i = (i + 1) % n;
  } while (i != disk.x2);
  out.push_back(disk.x2);
  return out;
}

std::vector<int> PlanarDevelopment::chain21() const {
  std::vector<int> out;
  if (!disk.loop_side) return out;
  const int n = size();
  for (int i = disk.x2; i != disk.x1; i = (i + 1) % n) out.push_back(i);
  out.push_back(disk.x1);
  return out;
}

double PlanarDevelopment::area() const { return polygon_area(boundary); }

PlanarDevelopment develop_half(const Polyhedron& poly, const FlatDisk& disk) {
  const int n = static_cast<int>(disk.corners.size());
  if (n < 3 || static_cast<int>(disk.edges.size()) != n) throw InputError("malformed disk boundary word");
  PlanarDevelopment dev;
  dev.disk = disk;
  Vec2 p{0.0, 0.0}, h{1.0, 0.0};
  double perimeter = 0.0;
  for (int i = 0; i < n; ++i) {
    dev.boundary.push_back(p);
    p = p + h * disk.edges[i].length;
    perimeter += disk.edges[i].length;
    h = rotate(h, kPi - disk.corners[(i + 1) % n].angle);
  }
  dev.closure = norm(p - dev.boundary.front());
  if (dev.closure > 1e-7 * std::max(perimeter, poly.diagonal()))
    throw GeometryError("development does not close (gap " + std::to_string(dev.closure) + ")");

  dev.min_turn = kPi;
  for (int i = 0; i < n; ++i) {
    const double t = dev.turn(i);
    dev.total_turn += t;
    dev.min_turn = std::min(dev.min_turn, t);
    if (t < -poly.tolerances().angle) dev.reflex.push_back(i);
  }

  dev.apex.assign(disk.cuts.size(), Vec2{});
  for (int i = 0; i < n; ++i) {
    const DiskEdge& e = disk.edges[i];
    if (e.kind != EdgeKind::TriangleBase || e.piece != 0) continue;
    const CurvatureTriangle& t = disk.triangles[e.cut];
    const Vec2 a = dev.boundary[i], b = dev.boundary[(i + 1) % n];
    dev.apex[e.cut] = (a + b) * 0.5 + perp(normalized(b - a)) * (t.leg * std::cos(0.5 * t.apex()));
  }

  if (disk.loop_side) {
    for (int i = 0; i < n; ++i) {
      const DiskEdge& e = disk.edges[i];
      if (e.kind != EdgeKind::TriangleBase || e.piece != 0 || !disk.corners[i].x_image) continue;
      const CutSegment& c = disk.cuts[e.cut];
      double offset = c.offset;
      if (!c.foot_at_node && c.foot_s > 0.5) offset += disk.x_angle - kPi;
      dev.x_cuts.push_back({offset, disk.triangles[e.cut].omega, disk.triangles[e.cut].pieces});
    }
    std::sort(dev.x_cuts.begin(), dev.x_cuts.end(), [](const XCut& a, const XCut& b) { return a.offset < b.offset; });
  }

  const SimplicityResult s = polygon_simple(dev.boundary);
  if (!s.simple) {
    std::ostringstream os;
    os << "development of the " << to_string(disk.side) << " half is not simple: edges " << s.edges.first << " and "
       << s.edges.second << " intersect";
    throw GeometryError(os.str());
  }
  return dev;
}

double tau21_formula(const std::vector<XCut>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) sum += xs[i + 1].offset - xs[i].offset;
  for (const XCut& x : xs) sum -= x.omega;
  const auto end = [](const XCut& x) { return x.omega / (2.0 * x.pieces); };
  return sum + end(xs.front()) + end(xs.back());
}

ChainReport turn_of_C21(const PlanarDevelopment& dev) {
  if (!dev.disk.loop_side) throw InputError("development is not on the loop side");
  ChainReport r;
  r.k = static_cast<int>(dev.x_cuts.size());
  if (r.k > 0) {
    r.alpha1 = dev.x_cuts.front().offset;
    r.alpha2 = dev.disk.x_angle - dev.x_cuts.back().offset;
    r.sum_beta = dev.x_cuts.back().offset - dev.x_cuts.front().offset;
  } else {
    r.alpha1 = r.alpha2 = dev.disk.x_angle;
  }
  r.tau21_formula = tau21_formula(dev.x_cuts);
  const std::vector<int> chain = dev.chain21();
  double run = 0.0;
  for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
    const double t = -dev.turn(chain[i]);
    r.tau21_chain += t;
    run = std::max(t, run + t);
    r.max_subchain_turn = std::max(r.max_subchain_turn, run);
  }
  return r;
}

namespace {

int edge_of_interval(const PlanarDevelopment& d, int interval) {
  for (int i = 0; i < d.size(); ++i)
    if (d.disk.edges[i].kind == EdgeKind::QSegment && d.disk.edges[i].interval == interval) return i;
  return -1;
}

double bbox_diagonal(const std::vector<Vec2>& pts) {
  Vec2 lo = pts.front(), hi = pts.front();
  for (Vec2 p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  return norm(hi - lo);
}

double support_violation(const PlanarDevelopment& d, int e) {
  const int n = d.size();
  const Vec2 a = d.boundary[e], b = d.boundary[(e + 1) % n];
  const Vec2 u = normalized(b - a);
  double worst = 0.0;
  for (Vec2 p : d.boundary) worst = std::max(worst, -cross(u, p - a));
  return worst;
}

bool better(const SeamCandidate& a, const SeamCandidate& b) {
  if (a.length != b.length) return a.length > b.length;
  return a.interval < b.interval;
}

}  // namespace

SeamCandidate seam_candidate(const PlanarDevelopment& left, const PlanarDevelopment& right, int interval) {
  SeamCandidate c;
  c.interval = interval;
  bool ok = true;
  for (int s = 0; s < 2; ++s) {
    const PlanarDevelopment& d = s == 0 ? left : right;
    c.edge[s] = edge_of_interval(d, interval);
    if (c.edge[s] < 0) throw InputError("loop interval " + std::to_string(interval) + " is not a development edge");
    c.length = d.disk.edges[c.edge[s]].length;
    c.support[s] = support_violation(d, c.edge[s]);
    ok = ok && c.support[s] <= 1e-9 * bbox_diagonal(d.boundary);
  }
  c.valid = ok;
  return c;
}

Seam select_seam(const PlanarDevelopment& left, const PlanarDevelopment& right, const QuasigeodesicLoop& loop) {
  Seam seam;
  int intervals = 0;
  for (const DiskEdge& e : left.disk.edges)
    if (e.kind == EdgeKind::QSegment) ++intervals;
  for (int j = 0; j < intervals; ++j) seam.candidates.push_back(seam_candidate(left, right, j));

  const PlanarDevelopment* ls = left.disk.loop_side ? &left : right.disk.loop_side ? &right : nullptr;
  if (ls && loop.kind == LoopKind::QuasigeodesicLoop) {
    const PlanarDevelopment& d = *ls;
    const int n = d.size();
    const std::vector<int> c12 = d.chain12();
    const Vec2 n1 = perp(d.boundary[(d.disk.x1 + 1) % n] - d.boundary[d.disk.x1]);
    const Vec2 n2 = perp(d.boundary[d.disk.x2] - d.boundary[(d.disk.x2 - 1 + n) % n]);
    int i1 = 0, i2 = 0;
    for (int i = 0; i < static_cast<int>(c12.size()); ++i) {
      if (dot(d.boundary[c12[i]], n1) > dot(d.boundary[c12[i1]], n1)) i1 = i;
      if (dot(d.boundary[c12[i]], n2) > dot(d.boundary[c12[i2]], n2)) i2 = i;
    }
    seam.y1 = c12[i1];
    seam.y2 = c12[i2];
    const int side = ls == &left ? 0 : 1;
    for (int i = std::min(i1, i2); i <= std::max(i1, i2); ++i) {
      const int y = c12[i];
      for (int e : {(y - 1 + n) % n, y}) {
        const DiskEdge& de = d.disk.edges[e];
        if (de.kind != EdgeKind::QSegment) continue;
        for (SeamCandidate& c : seam.candidates)
          if (c.interval == de.interval && c.edge[side] == e) c.y_rule = true;
      }
    }
  } else {
    for (SeamCandidate& c : seam.candidates) c.y_rule = true;
  }

  const SeamCandidate* best = nullptr;
  for (const SeamCandidate& c : seam.candidates)
    if (c.valid && c.y_rule && (!best || better(c, *best))) best = &c;
  if (!best) {
    seam.fallback = true;
    for (const SeamCandidate& c : seam.candidates)
      if (c.valid && (!best || better(c, *best))) best = &c;
  }
  if (!best) {
    std::ostringstream os;
    os << "no loop interval supports both developments:";
    for (const SeamCandidate& c : seam.candidates)
      os << " [" << c.interval << ": " << c.support[0] << ", " << c.support[1] << "]";
    throw GeometryError(os.str());
  }
  seam.chosen = *best;
  return seam;
}

UnfoldedPolygon join(const PlanarDevelopment& left, const PlanarDevelopment& right, const Seam& seam) {
  UnfoldedPolygon u;
  const int nl = left.size(), nr = right.size();
  const int el = seam.chosen.edge[0], er = seam.chosen.edge[1];
  const Vec2 A = left.boundary[el], B = left.boundary[(el + 1) % nl];
  const Vec2 B2 = right.boundary[er], A2 = right.boundary[(er + 1) % nr];
  u.right_placement = Rigid2::aligning(A2, B2, A, B);
  u.seam[0] = A;
  u.seam[1] = B;
  for (Vec2 p : right.boundary) u.right_boundary.push_back(u.right_placement.apply(p));

  for (int k = 1; k <= nl; ++k) {
    const int i = (el + k) % nl;
    u.polygon.push_back(left.boundary[i]);
    u.provenance.push_back(i == el ? PolygonEdge{1, (er + 1) % nr} : PolygonEdge{0, i});
  }
  for (int m = 2; m < nr; ++m) {
    const int j = (er + m) % nr;
    u.polygon.push_back(u.right_boundary[j]);
    u.provenance.push_back({1, j});
  }

  // Surface polygon: each triangle base (or pair of bases) becomes the two
  // images of its cut.
  const int N = static_cast<int>(u.polygon.size());
  for (int i = 0; i < N; ++i) {
    const PolygonEdge& pe = u.provenance[i];
    const PlanarDevelopment& d = pe.half == 0 ? left : right;
    const DiskEdge& e = d.disk.edges[pe.edge];
    if (e.kind == EdgeKind::TriangleBase && e.piece == 1) continue;
    u.surface.push_back(u.polygon[i]);
    if (e.kind != EdgeKind::TriangleBase) {
      u.surface_provenance.push_back(pe);
      continue;
    }
    const Vec2 apex = pe.half == 0 ? d.apex[e.cut] : u.right_placement.apply(d.apex[e.cut]);
    u.surface_provenance.push_back({pe.half, pe.edge, true, 0});
    u.surface.push_back(apex);
    u.surface_provenance.push_back({pe.half, pe.edge, true, 1});
  }

  for (const auto* poly : {&u.polygon, &u.surface}) {
    const SimplicityResult s = polygon_simple(*poly);
    if (!s.simple) {
      std::ostringstream os;
      os << (poly == &u.polygon ? "joined polygon" : "surface polygon") << " is not simple: edges " << s.edges.first
         << " and " << s.edges.second << " intersect";
      throw GeometryError(os.str());
    }
  }
  return u;
}

}  // namespace qstar
