#include "qstar/qloop.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "qstar/errors.hpp"

namespace qstar {

const char* to_string(LoopKind k) {
  switch (k) {
    case LoopKind::ClosedGeodesic:
      return "closed_geodesic";
    case LoopKind::ClosedQuasigeodesic:
      return "closed_quasigeodesic";
    case LoopKind::QuasigeodesicLoop:
      return "quasigeodesic_loop";
  }
  return "?";
}

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

double QuasigeodesicLoop::length() const {
  double l = 0.0;
  for (int i = 0; i < size(); ++i) l += segment_length(i);
  return l;
}

int QuasigeodesicLoop::faces_crossed() const {
  int q = 0;
  for (int i = 0; i < size(); ++i)
    if (segment_faces[i] != segment_faces[(i + size() - 1) % size()]) ++q;
  return std::max(q, 1);
}

namespace {

struct Branch {
  std::vector<PathSegment> segs;
  std::vector<Crossing> crossings;  // crossings[i] ends segs[i]
  double length = 0.0;
  std::set<int> vertices;
};

SurfacePoint crossing_locus(const Crossing& c) {
  return c.kind == CrossingKind::Edge ? SurfacePoint::on_edge(c.edge, c.t)
                                      : SurfacePoint::at_vertex(c.vertex);
}

/// Walker leaving p in direction d (given in face f0's frame); an edge start
/// switches to the face the direction points into.
GeodesicWalker start_walker(const Polyhedron& P, const SurfacePoint& p, int f0, Vec2 d,
                            VertexRule rule) {
  const Vec2 q = coords_in_face(P, p, f0);
  if (p.kind == LocusKind::Edge) {
    const int n = P.face_size(f0);
    for (int k = 0; k < n; ++k) {
      if (P.side_edge(f0, k) != p.id) continue;
      const Vec2 e = P.corner_coords(f0, (k + 1) % n) - P.corner_coords(f0, k);
      if (cross(e, d) < 0.0) {
        const Rigid2& T = P.transfer(f0, k);
        return GeodesicWalker(P, P.neighbor_face(f0, k), T.apply(q), T.rotate(d), rule);
      }
    }
  }
  return GeodesicWalker(P, f0, q, d, rule);
}

/// Transfer from face g into face f when they share an edge.
std::optional<Rigid2> transfer_between(const Polyhedron& P, int g, int f) {
  for (int k = 0; k < P.face_size(g); ++k)
    if (P.neighbor_face(g, k) == f) return P.transfer(g, k);
  return std::nullopt;
}

void drop_duplicates(const Polyhedron& P, std::vector<SurfacePoint>& pts, std::vector<int>& faces) {
  const double tol = P.tol_locus();
  bool changed = true;
  while (changed && pts.size() > 2) {
    changed = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (norm(position(P, pts[i]) - position(P, pts[j])) > tol) continue;
      if (j == 0) {
        pts.erase(pts.begin() + static_cast<long>(i));
        faces.erase(faces.begin() + static_cast<long>(i));
      } else {
        pts.erase(pts.begin() + static_cast<long>(j));
        faces.erase(faces.begin() + static_cast<long>(i));
      }
      changed = true;
      break;
    }
  }
}

int infer_segment_face(const Polyhedron& P, const SurfacePoint& a, const SurfacePoint& b) {
  for (int f = 0; f < P.num_faces(); ++f)
    if (lies_on_face(P, a, f) && lies_on_face(P, b, f)) return f;
  return -1;
}

}  // namespace

QuasigeodesicLoop construct_loop(const Polyhedron& P, const SurfacePoint& p, double dir_angle,
                                 const LoopOptions& opts) {
  if (p.kind == LocusKind::Vertex) throw InputError("loop seed point must not be a vertex");
  const int f0 = p.kind == LocusKind::Face ? p.id : P.edge(p.id).face[0];
  if (p.kind == LocusKind::Face) {
    const auto c = P.face_coords(f0);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (cross(c[(k + 1) % c.size()] - c[k], p.uv - c[k]) <= 0.0)
        throw InputError("seed point lies outside face " + std::to_string(f0));
  }
  const Vec2 d = unit_from_angle(dir_angle);
  const double tol = P.tol_locus();
  const int cap = opts.max_crossings.value_or(default_crossing_cap(P));

  Branch br[2];
  GeodesicWalker walkers[2] = {start_walker(P, p, f0, d, opts.rule),
                               start_walker(P, p, f0, -d, opts.rule)};

  while (true) {
    const int a = br[1].length < br[0].length ? 1 : 0;
    Branch& A = br[a];
    const GeodesicWalker::Step step = walkers[a].cast();
    const PathSegment& seg = step.segment;
    const double len = seg.length();
    const Vec2 dir = (seg.b - seg.a) / len;

    double best = std::numeric_limits<double>::infinity();
    int hit_branch = -1, hit_index = -1;
    for (int c = 0; c < 2; ++c) {
      const auto& segs = br[c].segs;
      for (std::size_t j = 0; j < segs.size(); ++j) {
        if (c == a && j + 1 == segs.size()) continue;
        if (c != a && j == 0 && A.segs.empty()) continue;
        Vec2 sa = segs[j].a, sb = segs[j].b;
        if (segs[j].face != seg.face) {
          const auto T = transfer_between(P, segs[j].face, seg.face);
          if (!T) continue;
          sa = T->apply(sa);
          sb = T->apply(sb);
        }
        const auto t = segment_hit_param(seg.a, seg.b, sa, sb, tol);
        if (!t) continue;
        const double along = *t * len;
        if (along <= tol && c == a) continue;
        if (along < best) {
          best = along;
          hit_branch = c;
          hit_index = static_cast<int>(j);
        }
      }
    }

    if (hit_branch >= 0) {
      const Vec2 xq = seg.a + dir * std::min(best, len);
      const SurfacePoint x = locate(P, seg.face, xq);
      if (x.kind == LocusKind::Vertex)
        throw GeometryError("loop branches meet at vertex " + std::to_string(x.id) +
                            " (unsupported configuration)");
      std::vector<SurfacePoint> pts{x};
      std::vector<int> faces;
      if (hit_branch == a) {
        for (std::size_t i = static_cast<std::size_t>(hit_index); i < A.segs.size(); ++i) {
          pts.push_back(crossing_locus(A.crossings[i]));
          faces.push_back(A.segs[i].face);
        }
        faces.push_back(seg.face);
      } else {
        const Branch& C = br[hit_branch];
        // Points and faces of each branch from p to x.
        std::vector<SurfacePoint> pa{p}, pc{p};
        std::vector<int> fa, fc;
        for (std::size_t i = 0; i < A.segs.size(); ++i) {
          pa.push_back(crossing_locus(A.crossings[i]));
          fa.push_back(A.segs[i].face);
        }
        fa.push_back(seg.face);
        for (int i = 0; i < hit_index; ++i) {
          pc.push_back(crossing_locus(C.crossings[i]));
          fc.push_back(C.segs[i].face);
        }
        fc.push_back(C.segs[hit_index].face);
        const auto& pf = a == 0 ? pa : pc;
        const auto& ff = a == 0 ? fa : fc;
        const auto& pb = a == 0 ? pc : pa;
        const auto& fb = a == 0 ? fc : fa;
        for (std::size_t i = pb.size() - 1; i >= 1; --i) pts.push_back(pb[i]);
        for (std::size_t i = fb.size(); i-- > 0;) faces.push_back(fb[i]);
        const bool keep_p = p.kind != LocusKind::Face || fb[0] != ff[0];
        if (keep_p) {
          pts.push_back(p);
        } else {
          faces.pop_back();
        }
        for (std::size_t i = 1; i < pf.size(); ++i) pts.push_back(pf[i]);
        for (int f : ff) faces.push_back(f);
      }
      drop_duplicates(P, pts, faces);
      return loop_from_waypoints(P, pts, faces, 0);
    }

    if (step.crossing.kind == CrossingKind::Vertex) {
      const int v = step.crossing.vertex;
      if (br[0].vertices.count(v) || br[1].vertices.count(v))
        throw GeometryError("loop branches meet at vertex " + std::to_string(v) +
                            " (unsupported configuration)");
      A.vertices.insert(v);
    }
    if (static_cast<int>(br[0].crossings.size() + br[1].crossings.size()) >= cap)
      throw GeometryError("crossing cap exceeded after " + std::to_string(cap) +
                          " crossings before the loop branches met (partial length " +
                          std::to_string(br[0].length + br[1].length) + ")");
    A.segs.push_back(seg);
    A.crossings.push_back(step.crossing);
    A.length += len;
    walkers[a].continue_past(step);
  }
}

QuasigeodesicLoop loop_from_waypoints(const Polyhedron& P, const std::vector<SurfacePoint>& pts,
                                      const std::vector<int>& segment_faces,
                                      std::optional<int> loop_point) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw InputError("a loop needs at least two waypoints");
  if (!segment_faces.empty() && static_cast<int>(segment_faces.size()) != n)
    throw InputError("segment face count does not match waypoint count");
  if (loop_point && (*loop_point < 0 || *loop_point >= n))
    throw InputError("loop point index out of range");

  QuasigeodesicLoop Q;
  Q.points.resize(n);
  Q.segment_faces.resize(n);
  for (int i = 0; i < n; ++i) {
    const SurfacePoint& p = pts[i];
    if (p.kind == LocusKind::Vertex && (p.id < 0 || p.id >= P.num_vertices()))
      throw InputError("waypoint vertex out of range");
    if (p.kind == LocusKind::Edge && (p.id < 0 || p.id >= P.num_edges() || p.t <= 0.0 || p.t >= 1.0))
      throw InputError("waypoint edge locus out of range");
    if (p.kind == LocusKind::Face && (p.id < 0 || p.id >= P.num_faces()))
      throw InputError("waypoint face out of range");
    Q.points[i].locus = p;
    Q.points[i].pos = position(P, p);
  }
  const double tol = P.tol_locus();
  for (int i = 0; i < n; ++i) {
    const SurfacePoint& a = pts[i];
    const SurfacePoint& b = pts[(i + 1) % n];
    int f = segment_faces.empty() ? infer_segment_face(P, a, b) : segment_faces[i];
    if (f < 0 || f >= P.num_faces() || !lies_on_face(P, a, f) || !lies_on_face(P, b, f))
      throw InputError("loop segment " + std::to_string(i) + " does not lie in a single face");
    if (Q.segment_length(i) <= tol) throw InputError("loop segment " + std::to_string(i) + " is degenerate");
    Q.segment_faces[i] = f;
  }
  for (int i = 0; i < n; ++i) {
    const int fin = Q.segment_faces[(i + n - 1) % n], fout = Q.segment_faces[i];
    const SurfacePoint& prev = pts[(i + n - 1) % n];
    const SurfacePoint& next = pts[(i + 1) % n];
    const Vec2 din = normalized(coords_in_face(P, pts[i], fin) - coords_in_face(P, prev, fin));
    const Vec2 dout = normalized(coords_in_face(P, next, fout) - coords_in_face(P, pts[i], fout));
    auto [l, r] = junction_angles(P, pts[i], fin, din, fout, dout);
    Q.points[i].left = l;
    Q.points[i].right = r;
  }

  const double atol = P.tolerances().angle;
  std::vector<int> violations;
  for (int i = 0; i < n; ++i)
    if (std::max(Q.points[i].left, Q.points[i].right) > kPi + atol) violations.push_back(i);
  if (loop_point) {
    for (int i : violations)
      if (i != *loop_point)
        throw InputError("angle condition violated at waypoint " + std::to_string(i) +
                         " which is not the loop point");
    Q.loop_point = *loop_point;
  } else if (violations.size() > 1) {
    throw InputError("angle condition violated at more than one waypoint");
  } else if (violations.size() == 1) {
    Q.loop_point = violations[0];
  }
  const LoopReport rep = classify(Q, atol);
  Q.kind = rep.kind;
  Q.beta = rep.beta;
  Q.beta_side = rep.beta_side;
  return Q;
}

LoopReport classify(const QuasigeodesicLoop& Q, double tol_angle) {
  LoopReport rep;
  rep.loop_point = Q.loop_point;
  bool geodesic = true, quasi = true;
  for (int i = 0; i < Q.size(); ++i) {
    const LoopPoint& p = Q.points[i];
    if (p.locus.kind == LocusKind::Vertex) geodesic = false;
    if (std::abs(p.left - kPi) > tol_angle || std::abs(p.right - kPi) > tol_angle) geodesic = false;
    if (std::max(p.left, p.right) > kPi + tol_angle) quasi = false;
  }
  if (geodesic) {
    rep.kind = LoopKind::ClosedGeodesic;
  } else if (quasi) {
    rep.kind = LoopKind::ClosedQuasigeodesic;
  } else {
    rep.kind = LoopKind::QuasigeodesicLoop;
    const LoopPoint& x = Q.points.at(Q.loop_point);
    rep.beta = std::max(x.left, x.right);
    rep.beta_side = x.left > x.right ? Side::Left : Side::Right;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Halves

double Piece::corner_angle(int k) const {
  const int n = size();
  return angle_ccw(coords[(k + 1) % n] - coords[k], coords[(k + n - 1) % n] - coords[k]);
}

int Half::position_of_loop_index(int i) const {
  for (int b = 0; b < boundary_size(); ++b)
    if (boundary_loop_index[b] == i) return b;
  return -1;
}

std::vector<std::pair<int, int>> Half::corners_at(int node) const {
  std::vector<std::pair<int, int>> out;
  for (int pi = 0; pi < static_cast<int>(pieces.size()); ++pi)
    for (int k = 0; k < pieces[pi].size(); ++k)
      if (pieces[pi].nodes[k] == node) out.emplace_back(pi, k);
  return out;
}

std::pair<int, int> Half::boundary_side(int b) const {
  const FanEntry& e = fans.at(b).front();
  return {e.piece, e.corner};
}

double Half::fan_offset(int b, int piece, Vec2 dir) const {
  for (const FanEntry& e : fans.at(b)) {
    if (e.piece != piece) continue;
    const Piece& pc = pieces[piece];
    const Vec2 out = pc.coords[(e.corner + 1) % pc.size()] - pc.coords[e.corner];
    double a = angle_ccw(out, dir);
    if (a >= kTwoPi - 1e-9) a = 0.0;
    if (a <= e.angle + 1e-9) return e.offset + a;
  }
  throw GeometryError("direction does not lie in the fan of boundary node");
}

namespace {

struct RawPiece {
  int face;
  std::vector<int> nodes;
  std::vector<Vec2> coords;
};

/// Splits a piece at reflex corners with diagonals balancing the two angles.
void split_reflex(RawPiece rp, std::vector<RawPiece>& out) {
  const int n = static_cast<int>(rp.nodes.size());
  for (int k = 0; k < n; ++k) {
    const Vec2 c = rp.coords[k];
    const Vec2 next = rp.coords[(k + 1) % n] - c, prev = rp.coords[(k + n - 1) % n] - c;
    const double theta = angle_ccw(next, prev);
    if (theta <= kPi) continue;
    int best = -1;
    double best_score = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j == k || j == (k + 1) % n || j == (k + n - 1) % n) continue;
      const double a = angle_ccw(next, rp.coords[j] - c);
      if (a <= 1e-12 || a >= theta - 1e-12) continue;
      const double score = std::min(a, theta - a);
      if (score <= best_score) continue;
      bool clear = true;
      for (int i = 0; i < n && clear; ++i) {
        const int i1 = (i + 1) % n;
        if (i == k || i1 == k || i == j || i1 == j) continue;
        if (segments_intersect(snap(c), snap(rp.coords[j]), snap(rp.coords[i]), snap(rp.coords[i1])))
          clear = false;
      }
      if (clear) {
        best = j;
        best_score = score;
      }
    }
    if (best < 0) throw GeometryError("could not split a reflex slice piece");
    RawPiece a{rp.face, {}, {}}, b{rp.face, {}, {}};
    for (int i = k;; i = (i + 1) % n) {
      a.nodes.push_back(rp.nodes[i]);
      a.coords.push_back(rp.coords[i]);
      if (i == best) break;
    }
    for (int i = best;; i = (i + 1) % n) {
      b.nodes.push_back(rp.nodes[i]);
      b.coords.push_back(rp.coords[i]);
      if (i == k) break;
    }
    split_reflex(std::move(a), out);
    split_reflex(std::move(b), out);
    return;
  }
  out.push_back(std::move(rp));
}

/// Slices face f along loop chords and returns its convex pieces.
std::vector<RawPiece> slice_face(const Polyhedron& P, const QuasigeodesicLoop& Q,
                                 const std::vector<int>& node_of_point, int f) {
  const int nv = P.num_vertices();
  const int n = P.face_size(f);
  const double tol = P.tol_locus();
  std::map<int, Vec2> pos;
  std::vector<std::pair<int, int>> edges;
  auto add_edge = [&](int u, int w) {
    if (u == w) return;
    auto key = std::minmax(u, w);
    if (std::find(edges.begin(), edges.end(), std::pair<int, int>(key.first, key.second)) == edges.end())
      edges.emplace_back(key.first, key.second);
  };
  for (int k = 0; k < n; ++k) pos[P.face(f)[k]] = P.corner_coords(f, k);

  // Loop points on each side, ordered along the side.
  std::vector<std::vector<std::pair<double, int>>> on_side(n);
  bool touched = false;
  for (int i = 0; i < Q.size(); ++i) {
    const SurfacePoint& s = Q.points[i].locus;
    if (!lies_on_face(P, s, f)) continue;
    touched = true;
    const int node = node_of_point[i];
    if (s.kind == LocusKind::Vertex) continue;
    const Vec2 q = coords_in_face(P, s, f);
    pos[node] = q;
    if (s.kind == LocusKind::Edge) {
      for (int k = 0; k < n; ++k) {
        if (P.side_edge(f, k) != s.id) continue;
        const Vec2 a = P.corner_coords(f, k), b = P.corner_coords(f, (k + 1) % n);
        on_side[k].emplace_back(closest_param(a, b, q), node);
      }
    }
  }
  if (!touched) {
    RawPiece rp{f, P.face(f), {}};
    for (int k = 0; k < n; ++k) rp.coords.push_back(P.corner_coords(f, k));
    return {rp};
  }
  for (int k = 0; k < n; ++k) {
    auto& s = on_side[k];
    std::sort(s.begin(), s.end());
    int prev = P.face(f)[k];
    for (auto& [t, node] : s) {
      add_edge(prev, node);
      prev = node;
    }
    add_edge(prev, P.face(f)[(k + 1) % n]);
  }
  auto side_of_node = [&](int node, int k) {
    if (node < nv) return node == P.face(f)[k] || node == P.face(f)[(k + 1) % n];
    for (auto& pr : on_side[k])
      if (pr.second == node) return true;
    return false;
  };
  for (int i = 0; i < Q.size(); ++i) {
    if (Q.segment_faces[i] != f) continue;
    const int u = node_of_point[i], w = node_of_point[(i + 1) % Q.size()];
    bool along_side = false;
    for (int k = 0; k < n; ++k)
      if (side_of_node(u, k) && side_of_node(w, k)) along_side = true;
    if (!along_side) add_edge(u, w);
  }

  std::map<int, std::vector<int>> adj;
  for (auto& [u, w] : edges) {
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  std::set<std::pair<int, int>> used;
  std::vector<RawPiece> out;
  for (auto& [u0, w0] : edges) {
    for (int dirn = 0; dirn < 2; ++dirn) {
      int u = dirn ? w0 : u0, w = dirn ? u0 : w0;
      if (used.count({u, w})) continue;
      RawPiece rp{f, {}, {}};
      const int su = u, sw = w;
      int guard = 0;
      do {
        used.insert({u, w});
        rp.nodes.push_back(u);
        rp.coords.push_back(pos.at(u));
        const Vec2 back = pos.at(u) - pos.at(w);
        int best = -1;
        double best_a = -1.0;
        for (int z : adj.at(w)) {
          const double a = z == u ? 0.0 : angle_ccw(back, pos.at(z) - pos.at(w));
          if (a > best_a) {
            best_a = a;
            best = z;
          }
        }
        u = w;
        w = best;
        if (++guard > 10000) throw GeometryError("face slicing did not close");
      } while (!(u == su && w == sw));
      const double area = polygon_area(rp.coords);
      if (area > tol * tol) split_reflex(std::move(rp), out);
    }
  }
  return out;
}

}  // namespace

std::pair<Half, Half> split_halves(const Polyhedron& P, const QuasigeodesicLoop& Q) {
  const int nv = P.num_vertices();
  const int m = Q.size();
  std::vector<HalfNode> nodes(nv);
  for (int v = 0; v < nv; ++v) {
    nodes[v].pos = P.vertex(v);
    nodes[v].vertex = v;
  }
  std::vector<int> node_of_point(m);
  for (int i = 0; i < m; ++i) {
    const SurfacePoint& s = Q.points[i].locus;
    if (s.kind == LocusKind::Vertex) {
      if (nodes[s.id].loop_index >= 0) throw InputError("loop is not simple: vertex visited twice");
      node_of_point[i] = s.id;
      nodes[s.id].loop_index = i;
    } else {
      node_of_point[i] = static_cast<int>(nodes.size());
      HalfNode hn;
      hn.pos = Q.points[i].pos;
      hn.loop_index = i;
      nodes.push_back(hn);
    }
  }

  std::vector<RawPiece> raw;
  for (int f = 0; f < P.num_faces(); ++f)
    for (auto& rp : slice_face(P, Q, node_of_point, f)) raw.push_back(std::move(rp));

  std::map<std::pair<int, int>, std::pair<int, int>> owner;  // directed edge -> (piece, side)
  for (int pi = 0; pi < static_cast<int>(raw.size()); ++pi) {
    const auto& ns = raw[pi].nodes;
    for (int k = 0; k < static_cast<int>(ns.size()); ++k) {
      const std::pair<int, int> key{ns[k], ns[(k + 1) % ns.size()]};
      if (!owner.emplace(key, std::make_pair(pi, k)).second)
        throw GeometryError("surface slicing produced overlapping pieces (loop not simple?)");
    }
  }
  std::set<std::pair<int, int>> loop_edges;
  for (int i = 0; i < m; ++i) {
    const int u = node_of_point[i], w = node_of_point[(i + 1) % m];
    loop_edges.insert({u, w});
    loop_edges.insert({w, u});
  }

  std::vector<int> side(raw.size(), -1);
  std::deque<int> queue;
  auto seed = [&](int pi, int s) {
    if (side[pi] >= 0 && side[pi] != s)
      throw GeometryError("loop does not separate the surface into two halves");
    if (side[pi] < 0) {
      side[pi] = s;
      queue.push_back(pi);
    }
  };
  for (int i = 0; i < m; ++i) {
    const int u = node_of_point[i], w = node_of_point[(i + 1) % m];
    auto l = owner.find({u, w}), r = owner.find({w, u});
    if (l == owner.end() || r == owner.end())
      throw GeometryError("surface slicing failed along loop segment " + std::to_string(i));
    seed(l->second.first, 0);
    seed(r->second.first, 1);
  }
  while (!queue.empty()) {
    const int pi = queue.front();
    queue.pop_front();
    const auto& ns = raw[pi].nodes;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const int u = ns[k], w = ns[(k + 1) % ns.size()];
      if (loop_edges.count({u, w})) continue;
      auto it = owner.find({w, u});
      if (it == owner.end()) throw GeometryError("surface slicing left an unmatched edge");
      const int q = it->second.first;
      if (side[q] >= 0 && side[q] != side[pi])
        throw GeometryError("loop does not separate the surface into two halves");
      if (side[q] < 0) {
        side[q] = side[pi];
        queue.push_back(q);
      }
    }
  }

  std::pair<Half, Half> result;
  for (int s = 0; s < 2; ++s) {
    Half& H = s == 0 ? result.first : result.second;
    H.side = s == 0 ? Side::Left : Side::Right;
    H.loop_point = Q.kind == LoopKind::QuasigeodesicLoop ? Q.loop_point : -1;
    H.nodes = nodes;
    std::vector<int> local(raw.size(), -1);
    for (int pi = 0; pi < static_cast<int>(raw.size()); ++pi) {
      if (side[pi] != s) continue;
      local[pi] = static_cast<int>(H.pieces.size());
      Piece pc;
      pc.parent_face = raw[pi].face;
      pc.nodes = raw[pi].nodes;
      pc.coords = raw[pi].coords;
      H.pieces.push_back(std::move(pc));
    }
    for (int pi = 0; pi < static_cast<int>(raw.size()); ++pi) {
      if (local[pi] < 0) continue;
      Piece& pc = H.pieces[local[pi]];
      const int n = pc.size();
      pc.neighbor.assign(n, -1);
      pc.neighbor_side.assign(n, -1);
      pc.transfer.assign(n, Rigid2{});
      for (int k = 0; k < n; ++k) {
        const int u = pc.nodes[k], w = pc.nodes[(k + 1) % n];
        if (loop_edges.count({u, w})) continue;
        const auto [q, j] = owner.at({w, u});
        if (local[q] < 0) throw GeometryError("half piece adjacency crosses the loop");
        pc.neighbor[k] = local[q];
        pc.neighbor_side[k] = j;
        const Piece& other = H.pieces[local[q]];
        const int m2 = other.size();
        pc.transfer[k] = Rigid2::aligning(pc.coords[k], pc.coords[(k + 1) % n],
                                          other.coords[(j + 1) % m2], other.coords[j]);
      }
    }

    const int bn = m;
    H.boundary.resize(bn);
    H.boundary_loop_index.resize(bn);
    for (int b = 0; b < bn; ++b) {
      const int i = s == 0 ? b : (m - b) % m;
      H.boundary[b] = node_of_point[i];
      H.boundary_loop_index[b] = i;
    }
    H.boundary_pos.assign(H.nodes.size(), -1);
    for (int b = 0; b < bn; ++b) H.boundary_pos[H.boundary[b]] = b;

    H.fans.resize(bn);
    H.interior_angle.resize(bn);
    for (int b = 0; b < bn; ++b) {
      const int u = H.boundary[b], next = H.boundary[(b + 1) % bn];
      auto it = owner.find({u, next});
      int pi = local.at(it->second.first), k = it->second.second;
      double offset = 0.0;
      for (int guard = 0;; ++guard) {
        if (guard > 1000) throw GeometryError("boundary fan did not close");
        const Piece& pc = H.pieces[pi];
        const double ang = pc.corner_angle(k);
        H.fans[b].push_back({pi, k, offset, ang});
        offset += ang;
        const int in_side = (k + pc.size() - 1) % pc.size();
        if (pc.neighbor[in_side] < 0) break;
        const int q = pc.neighbor[in_side];
        pi = q;
        k = pc.neighbor_side[in_side];
      }
      H.interior_angle[b] = offset;
      H.tau_q += kPi - offset;
    }

    std::set<int> seen;
    for (const Piece& pc : H.pieces)
      for (int node : pc.nodes)
        if (node < nv && H.nodes[node].loop_index < 0) seen.insert(node);
    H.contained_vertices.assign(seen.begin(), seen.end());
    for (int v : H.contained_vertices) H.omega_q += P.curvature(v);
  }

  std::vector<int> count(nv, 0);
  for (int v : result.first.contained_vertices) ++count[v];
  for (int v : result.second.contained_vertices) ++count[v];
  for (int v = 0; v < nv; ++v) {
    const int expected = nodes[v].loop_index >= 0 ? 0 : 1;
    if (count[v] != expected)
      throw GeometryError("halves do not partition the vertices (vertex " + std::to_string(v) + ")");
  }
  return result;
}

}  // namespace qstar
